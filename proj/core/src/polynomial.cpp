#include "weilkit/polynomial.hpp"

#include <sstream>

namespace weilkit {

RatPolynomial to_rational(const IntPolynomial& p) {
    std::vector<Rational> c;
    c.reserve(p.coefficients().size());
    for (const auto& a : p.coefficients()) c.emplace_back(a);
    return RatPolynomial(std::move(c));
}

Integer content(const IntPolynomial& p) {
    Integer g = 0;
    for (const auto& a : p.coefficients()) g = gcd(g, a);
    return g;
}

IntPolynomial primitive_part(const IntPolynomial& p) {
    if (p.is_zero()) return p;
    Integer g = content(p);
    if (p.leading() < 0) g = -g;
    std::vector<Integer> c;
    c.reserve(p.coefficients().size());
    for (const auto& a : p.coefficients()) c.push_back(detail::exact_quotient(a, g));
    return IntPolynomial(std::move(c));
}

IntPolynomial primitive_part(const RatPolynomial& p) {
    if (p.is_zero()) return IntPolynomial();
    Integer den = 1;
    for (const auto& a : p.coefficients()) den = lcm(den, Integer(a.get_den()));
    std::vector<Integer> c;
    c.reserve(p.coefficients().size());
    for (const auto& a : p.coefficients()) {
        Rational scaled = a * den;
        c.emplace_back(scaled.get_num());
    }
    return primitive_part(IntPolynomial(std::move(c)));
}

RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b) {
    RatPolynomial x = a, y = b;
    while (!y.is_zero()) {
        RatPolynomial r = divmod(x, y).second;
        // Keep intermediate sizes in check.
        if (!r.is_zero()) r = to_rational(primitive_part(r));
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero()) return x;
    Rational lc = x.leading();
    std::vector<Rational> c = x.coefficients();
    for (auto& v : c) v /= lc;
    return RatPolynomial(std::move(c));
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
    RatPolynomial g = gcd(to_rational(a), to_rational(b));
    return primitive_part(g);
}

bool is_squarefree(const IntPolynomial& p) {
    if (p.is_zero()) return false;
    return gcd(p, p.derivative()).degree() <= 0;
}

IntPolynomial reduce_mod(const IntPolynomial& p, const Integer& m) {
    std::vector<Integer> c;
    c.reserve(p.coefficients().size());
    for (const auto& a : p.coefficients()) c.push_back(mod(a, m));
    return IntPolynomial(std::move(c));
}

IntPolynomial rem_mod(const IntPolynomial& a, const IntPolynomial& monic, const Integer& m) {
    if (!monic.is_monic()) throw Error("rem_mod requires a monic modulus");
    std::vector<Integer> rem = a.coefficients();
    for (auto& v : rem) v = mod(v, m);
    const int db = monic.degree();
    for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
        Integer f = rem[static_cast<std::size_t>(i)];
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) {
            Integer& slot = rem[static_cast<std::size_t>(i - db + j)];
            slot = mod(slot - f * monic.coefficients()[static_cast<std::size_t>(j)], m);
        }
    }
    if (static_cast<int>(rem.size()) > db) rem.resize(static_cast<std::size_t>(std::max(db, 0)));
    return IntPolynomial(std::move(rem));
}

IntPolynomial parse_polynomial(const std::string& text) {
    std::vector<Integer> c;
    std::string item;
    std::stringstream ss(text);
    bool any = false;
    while (std::getline(ss, item, ',')) {
        any = true;
        try {
            c.push_back(parse_integer(item));
        } catch (const Error&) {
            throw Error("malformed polynomial '" + text + "': bad coefficient '" + item + "'");
        }
    }
    if (!any || (!text.empty() && text.back() == ',')) {
        throw Error("malformed polynomial '" + text + "'");
    }
    return IntPolynomial(std::move(c));
}

std::string to_wire(const IntPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
        if (i) out += ',';
        out += p.coefficients()[i].get_str();
    }
    return out;
}

namespace {

template <class T>
std::string render(const Polynomial<T>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        T a = p.coeff(i);
        if (a == 0) continue;
        bool neg = a < 0;
        T mag = neg ? T(-a) : a;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        std::string term;
        if (i == 0) {
            term = mag.get_str();
        } else {
            if (mag != 1) term = mag.get_str() + "*";
            term += var;
            if (i > 1) term += "^" + std::to_string(i);
        }
        out += term;
    }
    return out;
}

}  // namespace

std::string to_string(const IntPolynomial& p, const std::string& var) { return render(p, var); }
std::string to_string(const RatPolynomial& p, const std::string& var) { return render(p, var); }

}  // namespace weilkit

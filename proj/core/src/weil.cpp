#include "weilkit/weil.hpp"

#include <algorithm>
#include <sstream>

#include "weilkit/integer_factor.hpp"
#include "weilkit/sturm.hpp"

namespace weilkit {

GlobalContext GlobalContext::from_pr(const Integer& p, int r) {
    if (!is_prime(p)) throw Error("p = " + p.get_str() + " is not prime");
    if (r < 1) throw Error("r must be a positive integer");
    return {p, r, ipow(p, static_cast<unsigned long>(r))};
}

GlobalContext GlobalContext::from_q(const Integer& q) {
    auto pp = prime_power(q);
    if (!pp) throw Error("q = " + q.get_str() + " is not a prime power");
    return from_pr(pp->first, pp->second);
}

Integer GlobalContext::sqrt_q() const {
    if (r % 2 != 0) throw Error("sqrt(q) is irrational for odd r");
    return ipow(p, static_cast<unsigned long>(r / 2));
}

std::string to_string(Rejection r) {
    switch (r) {
        case Rejection::reducible: return "reducible";
        case Rejection::functional_equation_fails: return "functional-equation-fails";
        case Rejection::real_root_outside_bound: return "real-root-outside-bound";
        case Rejection::real_but_not_sqrt_q: return "real-but-not-sqrt-q";
    }
    return "unknown";
}

std::string to_string(SlopeType s) {
    switch (s) {
        case SlopeType::ordinary: return "ordinary";
        case SlopeType::supersingular: return "supersingular";
        case SlopeType::mixed: return "mixed";
    }
    return "unknown";
}

namespace {

bool irreducible_over_q(const IntPolynomial& f) {
    if (f.degree() <= 8) return is_irreducible_over_q(f);
    return is_squarefree(f) && factor_over_z(f).size() == 1;
}

bool functional_equation_holds(const IntPolynomial& f, const Integer& q) {
    const int n = f.degree();
    if (n % 2 != 0) return false;
    const int d = n / 2;
    for (int i = 0; i < d; ++i)
        if (f.coeff(i) != ipow(q, static_cast<unsigned long>(d - i)) * f.coeff(2 * d - i)) return false;
    return true;
}

Validation reject(Rejection r) { return {std::nullopt, r}; }

}  // namespace

IntPolynomial trace_polynomial(const IntPolynomial& poly, const Integer& q) {
    const int n = poly.degree();
    if (n < 0 || n % 2 != 0) throw Error("trace polynomial needs even degree");
    const int d = n / 2;
    const IntPolynomial quad = {q, Integer(0), Integer(1)};
    std::vector<IntPolynomial> powers = {IntPolynomial::constant(Integer(1))};
    for (int j = 1; j <= d; ++j) powers.push_back(powers.back() * quad);
    IntPolynomial rest = poly;
    std::vector<Integer> out(static_cast<std::size_t>(d) + 1);
    for (int j = d; j >= 0; --j) {
        Integer b = rest.coeff(d + j);
        out[static_cast<std::size_t>(j)] = b;
        if (b != 0) rest = rest - IntPolynomial::monomial(b, d - j) * powers[static_cast<std::size_t>(j)];
    }
    if (!rest.is_zero()) throw Error("polynomial does not satisfy the functional equation");
    return IntPolynomial(out);
}

IntPolynomial from_trace_polynomial(const IntPolynomial& trace, const Integer& q) {
    const int d = trace.degree();
    const IntPolynomial quad = {q, Integer(0), Integer(1)};
    IntPolynomial out, power = IntPolynomial::constant(Integer(1));
    for (int j = 0; j <= d; ++j) {
        if (trace.coeff(j) != 0) out = out + IntPolynomial::monomial(trace.coeff(j), d - j) * power;
        power = power * quad;
    }
    return out;
}

Validation validate_weil(const IntPolynomial& poly, const GlobalContext& ctx) {
    if (!poly.is_monic()) throw PreconditionError("validate_weil needs a monic polynomial");
    const int n = poly.degree();
    if (n < 1) return reject(Rejection::reducible);
    if (n == 1) {
        if (poly.coeff(0) * poly.coeff(0) == ctx.q) return {WeilClass{ctx, poly, true}, std::nullopt};
        return reject(Rejection::real_but_not_sqrt_q);
    }
    if (!irreducible_over_q(poly)) return reject(Rejection::reducible);
    if (n == 2 && poly == IntPolynomial{-ctx.q, Integer(0), Integer(1)}) return {WeilClass{ctx, poly, true}, std::nullopt};
    if (!functional_equation_holds(poly, ctx.q)) return reject(Rejection::functional_equation_fails);
    const IntPolynomial tr = trace_polynomial(poly, ctx.q);
    const RealPoint lo = RealPoint::quadratic(0, -2, ctx.q), hi = RealPoint::quadratic(0, 2, ctx.q);
    if (sign_at(tr, hi) != 0 && SturmSequence(tr).count(lo, hi) == tr.degree())
        return {WeilClass{ctx, poly, false}, std::nullopt};
    return reject(Rejection::real_root_outside_bound);
}

SymmetricPolynomial::SymmetricPolynomial(std::map<Key, Integer> terms) {
    for (auto& [k, v] : terms)
        if (v != 0) terms_.emplace(k, std::move(v));
}

SymmetricPolynomial SymmetricPolynomial::constant(const Integer& c) { return SymmetricPolynomial(std::map<Key, Integer>{{{0, 0}, c}}); }

Integer SymmetricPolynomial::coeff(int a2, int b2) const {
    auto it = terms_.find({a2, b2});
    return it == terms_.end() ? Integer(0) : it->second;
}

bool SymmetricPolynomial::has_half_exponents() const {
    for (const auto& [k, v] : terms_)
        if (k.first % 2 != 0 || k.second % 2 != 0) return true;
    return false;
}

SymmetricPolynomial SymmetricPolynomial::operator*(const SymmetricPolynomial& o) const {
    std::map<Key, Integer> out;
    for (const auto& [ka, va] : terms_)
        for (const auto& [kb, vb] : o.terms_) out[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
    return SymmetricPolynomial(out);
}

SymmetricPolynomial SymmetricPolynomial::operator+(const SymmetricPolynomial& o) const {
    std::map<Key, Integer> out = terms_;
    for (const auto& [k, v] : o.terms_) out[k] += v;
    return SymmetricPolynomial(out);
}

IntPolynomial SymmetricPolynomial::substitute(const Integer& q, int degree) const {
    std::map<int, Integer> acc;
    std::optional<Integer> root;
    for (const auto& [k, v] : terms_) {
        const int num = k.first - k.second + degree;
        if (num % 2 != 0 || num < 0) throw Error("substitution does not give a polynomial");
        Integer scale;
        if (k.second % 2 == 0) {
            scale = ipow(q, static_cast<unsigned long>(k.second / 2));
        } else {
            if (!root) {
                if (!is_square(q)) throw Error("half exponent of V needs a square q");
                root = isqrt(q);
            }
            scale = ipow(*root, static_cast<unsigned long>(k.second));
        }
        acc[num / 2] += v * scale;
    }
    std::vector<Integer> c;
    for (const auto& [e, v] : acc) {
        if (c.size() <= static_cast<std::size_t>(e)) c.resize(static_cast<std::size_t>(e) + 1, Integer(0));
        c[static_cast<std::size_t>(e)] = v;
    }
    return IntPolynomial(c);
}

namespace {

std::string monomial_name(char var, int doubled) {
    std::string s(1, var);
    if (doubled == 2) return s;
    if (doubled % 2 == 0) return s + "^" + std::to_string(doubled / 2);
    return s + "^(" + std::to_string(doubled) + "/2)";
}

}  // namespace

std::string SymmetricPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    // F-heavy terms first, then the constant, then V-heavy terms.
    std::vector<std::pair<Key, Integer>> items(terms_.begin(), terms_.end());
    std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
        int dx = x.first.first - x.first.second, dy = y.first.first - y.first.second;
        if (dx != dy) return dx > dy;
        return x.first.first > y.first.first;
    });
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, v] : items) {
        std::string mono;
        if (k.first > 0) mono += monomial_name('F', k.first);
        if (k.second > 0) mono += (mono.empty() ? "" : "*") + monomial_name('V', k.second);
        Integer a = abs(v);
        if (first) {
            if (v < 0) out << "-";
        } else {
            out << (v < 0 ? " - " : " + ");
        }
        if (mono.empty()) {
            out << a.get_str();
        } else {
            if (a != 1) out << a.get_str() << "*";
            out << mono;
        }
        first = false;
    }
    return out.str();
}

SymmetricPolynomial symmetric_polynomial(const WeilClass& c) {
    const IntPolynomial& f = c.poly;
    if (c.is_real) {
        if (f.degree() == 1) {
            const Integer eps = f.coeff(0) < 0 ? 1 : -1;  // poly = x - eps*sqrt(q)
            return SymmetricPolynomial(std::map<SymmetricPolynomial::Key, Integer>{{{1, 0}, Integer(1)}, {{0, 1}, Integer(-eps)}});
        }
        return SymmetricPolynomial(std::map<SymmetricPolynomial::Key, Integer>{{{2, 0}, Integer(1)}, {{0, 2}, Integer(-1)}});
    }
    const int d = f.degree() / 2;
    std::map<SymmetricPolynomial::Key, Integer> terms;
    terms[{0, 0}] = f.coeff(d);
    for (int j = 1; j <= d; ++j) {
        terms[{2 * j, 0}] = f.coeff(d + j);
        terms[{0, 2 * j}] = f.coeff(d + j);
    }
    return SymmetricPolynomial(terms);
}

WeilSet make_weil_set(std::vector<WeilClass> classes) {
    if (classes.empty()) throw Error("a Weil set needs at least one class");
    WeilSet w;
    w.context = classes.front().context;
    w.P = IntPolynomial::constant(Integer(1));
    w.h = SymmetricPolynomial::constant(Integer(1));
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (!(classes[i].context == w.context)) throw Error("classes of a Weil set must share q");
        for (std::size_t j = 0; j < i; ++j)
            if (classes[j].poly == classes[i].poly) throw Error("duplicate class " + to_wire(classes[i].poly) + " in Weil set");
        w.P = w.P * classes[i].poly;
        w.h = w.h * symmetric_polynomial(classes[i]);
        w.degree += classes[i].degree();
    }
    w.classes = std::move(classes);
    return w;
}

SlopeInfo slope_type(const WeilClass& c) {
    Rational half(c.context.r, 2);
    half.canonicalize();
    SlopeInfo info;
    if (c.is_real) {
        info.slopes.assign(static_cast<std::size_t>(c.degree()), half);
    } else {
        info.slopes = newton_polygon(c.poly, c.context.p).root_valuations();
    }
    bool ord = true, ss = true;
    for (const auto& s : info.slopes) {
        if (s != 0 && s != c.context.r) ord = false;
        if (s != half) ss = false;
    }
    info.type = ord ? SlopeType::ordinary : (ss ? SlopeType::supersingular : SlopeType::mixed);
    return info;
}

std::vector<WeilClass> real_classes(const GlobalContext& ctx) {
    if (ctx.r % 2 == 0) {
        const Integer s = ctx.sqrt_q();
        return {WeilClass{ctx, IntPolynomial{-s, Integer(1)}, true}, WeilClass{ctx, IntPolynomial{s, Integer(1)}, true}};
    }
    return {WeilClass{ctx, IntPolynomial{-ctx.q, Integer(0), Integer(1)}, true}};
}

std::vector<WeilClass> enumerate_weil(const GlobalContext& ctx, int max_degree) {
    std::vector<WeilClass> out;
    for_each_weil(ctx, max_degree, [&](const WeilClass& c) { out.push_back(c); });
    std::sort(out.begin(), out.end(), [](const WeilClass& a, const WeilClass& b) { return a.poly < b.poly; });
    return out;
}

}  // namespace weilkit

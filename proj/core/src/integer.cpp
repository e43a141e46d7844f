#include "weilkit/integer.hpp"

#include <cctype>

namespace weilkit {

Integer ipow(const Integer& base, unsigned long exp) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

long valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw Error("valuation of zero");
    if (p < 2) throw Error("valuation base must be >= 2");
    Integer m = abs(n);
    long v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

long valuation(const Rational& x, const Integer& p) {
    return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::optional<std::pair<Integer, int>> prime_power(const Integer& q) {
    if (q < 2) return std::nullopt;
    if (is_prime(q)) return std::make_pair(q, 1);
    for (unsigned long e = 2; mpz_sizeinbase(q.get_mpz_t(), 2) >= e; ++e) {
        Integer root;
        if (mpz_root(root.get_mpz_t(), q.get_mpz_t(), e) != 0 && is_prime(root)) {
            return std::make_pair(root, static_cast<int>(e));
        }
    }
    return std::nullopt;
}

Integer isqrt(const Integer& n) {
    if (n < 0) throw Error("isqrt of negative number");
    Integer out;
    mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
    return out;
}

bool is_square(const Integer& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

Integer mod(const Integer& a, const Integer& m) {
    Integer out;
    mpz_fdiv_r(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (out < 0) out += abs(m);
    return out;
}

Integer sym_mod(const Integer& a, const Integer& m) {
    Integer out = mod(a, m);
    if (2 * out > m) out -= m;
    return out;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
    Integer out;
    if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw Error("element " + a.get_str() + " is not invertible modulo " + m.get_str());
    }
    return mod(out, m);
}

std::string to_string(const Integer& a) { return a.get_str(); }
std::string to_string(const Rational& a) { return a.get_str(); }

Integer parse_integer(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = text.size();
    while (j > i && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
    std::string body = text.substr(i, j - i);
    std::size_t start = (!body.empty() && (body[0] == '-' || body[0] == '+')) ? 1 : 0;
    if (body.size() == start) throw Error("malformed integer '" + text + "'");
    for (std::size_t k = start; k < body.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(body[k]))) {
            throw Error("malformed integer '" + text + "'");
        }
    }
    if (body[0] == '+') body.erase(0, 1);
    return Integer(body);
}

}  // namespace weilkit

#include "weilkit/integer_factor.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "weilkit/finite_field.hpp"

namespace weilkit {

namespace {

// One quadratic Hensel step: f = g*h, s*g + t*h = 1 modulo m become valid modulo m^2.
void hensel_step(const IntPolynomial& f, IntPolynomial& g, IntPolynomial& h, IntPolynomial& s, IntPolynomial& t,
                 const Integer& m2) {
    IntPolynomial e = reduce_mod(f - g * h, m2);
    auto [q, r] = divmod(reduce_mod(s * e, m2), h);
    IntPolynomial g2 = reduce_mod(g + t * e + q * g, m2);
    IntPolynomial h2 = reduce_mod(h + r, m2);
    IntPolynomial b = reduce_mod(s * g2 + t * h2 - IntPolynomial::constant(Integer(1)), m2);
    auto [c, d] = divmod(reduce_mod(s * b, m2), h2);
    s = reduce_mod(s - d, m2);
    t = reduce_mod(t - t * b - c * g2, m2);
    g = std::move(g2);
    h = std::move(h2);
}

IntPolynomial product(const std::vector<IntPolynomial>& fs, std::size_t lo, std::size_t hi, const Integer& m) {
    IntPolynomial acc = IntPolynomial::constant(Integer(1));
    for (std::size_t i = lo; i < hi; ++i) acc = reduce_mod(acc * fs[i], m);
    return acc;
}

void lift_tree(const IntPolynomial& f, const std::vector<IntPolynomial>& parts, std::size_t lo, std::size_t hi,
               const Integer& p, long k, std::vector<IntPolynomial>& out) {
    const Integer pk = ipow(p, static_cast<unsigned long>(k));
    if (hi - lo == 1) {
        out[lo] = reduce_mod(f, pk);
        return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    IntPolynomial g = product(parts, lo, mid, p);
    IntPolynomial h = product(parts, mid, hi, p);
    const std::int64_t pp = p.get_si();
    FpPolynomial gg, ss, tt;
    xgcd(FpPolynomial::from_integer(g, pp), FpPolynomial::from_integer(h, pp), gg, ss, tt);
    if (!gg.is_one()) throw Error("Hensel lifting: parts are not coprime modulo p");
    IntPolynomial s = ss.to_integer(), t = tt.to_integer();
    Integer m = p;
    while (m < pk) {
        Integer m2 = m * m;
        hensel_step(f, g, h, s, t, m2);
        m = m2;
    }
    g = reduce_mod(g, pk);
    h = reduce_mod(h, pk);
    lift_tree(g, parts, lo, mid, p, k, out);
    lift_tree(h, parts, mid, hi, p, k, out);
}

IntPolynomial symmetric(const IntPolynomial& f, const Integer& m) {
    std::vector<Integer> c;
    for (const auto& a : f.coefficients()) c.push_back(sym_mod(a, m));
    return IntPolynomial(std::move(c));
}

bool squarefree_mod(const IntPolynomial& f, std::int64_t p) {
    FpPolynomial g = FpPolynomial::from_integer(f, p);
    if (g.degree() != f.degree()) return false;
    return gcd(g, g.derivative()).degree() == 0;
}


// Fixed-size arithmetic over F_p for the degree-pattern test; p < 2^31, degree <= 16.
class SmallFp {
public:
    using Poly = std::vector<std::uint64_t>;  // trimmed, constant first

    explicit SmallFp(std::uint64_t p) : p_(p) {}

    Poly reduce(const IntPolynomial& f) const {
        Poly out(static_cast<std::size_t>(f.degree() + 1));
        for (int i = 0; i <= f.degree(); ++i) out[static_cast<std::size_t>(i)] = mpz_fdiv_ui(f.coeff(i).get_mpz_t(), p_);
        trim(out);
        return out;
    }

    std::uint64_t inv(std::uint64_t a) const {
        std::uint64_t r = 1, e = p_ - 2;
        a %= p_;
        while (e) {
            if (e & 1) r = r * a % p_;
            a = a * a % p_;
            e >>= 1;
        }
        return r;
    }

    static void trim(Poly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    // a mod b, and the quotient when q is given.
    void divmod(Poly& a, const Poly& b, Poly* q) const {
        const std::size_t nb = b.size();
        const std::uint64_t li = inv(b.back());
        if (q) q->assign(a.size() >= nb ? a.size() - nb + 1 : 0, 0);
        while (a.size() >= nb) {
            const std::size_t shift = a.size() - nb;
            const std::uint64_t c = a.back() * li % p_;
            if (q) (*q)[shift] = c;
            for (std::size_t i = 0; i < nb; ++i) a[shift + i] = (a[shift + i] + (p_ - c) * b[i]) % p_;
            trim(a);
        }
    }

    Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const {
        if (a.empty() || b.empty()) return {};
        Poly out(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p_;
        trim(out);
        divmod(out, m, nullptr);
        return out;
    }

    Poly powmod(Poly a, std::uint64_t e, const Poly& m) const {
        Poly r = {1};
        divmod(r, m, nullptr);
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            e >>= 1;
            if (e) a = mulmod(a, a, m);
        }
        return r;
    }

    Poly gcd(Poly a, Poly b) const {
        while (!b.empty()) {
            divmod(a, b, nullptr);
            std::swap(a, b);
        }
        return a;
    }

    Poly derivative(const Poly& a) const {
        Poly out;
        for (std::size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * (i % p_) % p_);
        trim(out);
        return out;
    }

    // Degrees of the irreducible factors of a monic f, or false if f is not squarefree.
    bool factor_degrees(const Poly& f, std::vector<int>& degs) const {
        degs.clear();
        if (gcd(f, derivative(f)).size() != 1) return false;
        Poly rest = f;
        Poly h = {0, 1};
        divmod(h, rest, nullptr);
        for (int i = 1; 2 * i <= static_cast<int>(rest.size()) - 1; ++i) {
            h = powmod(h, p_, rest);
            Poly hx = h;
            if (hx.size() < 2) hx.resize(2, 0);
            hx[1] = (hx[1] + p_ - 1) % p_;
            trim(hx);
            Poly g = gcd(rest, hx);
            const int dg = static_cast<int>(g.size()) - 1;
            if (dg > 0) {
                for (int k = 0; k < dg / i; ++k) degs.push_back(i);
                Poly q;
                divmod(rest, g, &q);
                rest = q;
                divmod(h, rest, nullptr);
            }
        }
        if (rest.size() > 1) degs.push_back(static_cast<int>(rest.size()) - 1);
        return true;
    }

private:
    std::uint64_t p_;
};

const std::int64_t kSmallPrimes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73};

}  // namespace

std::vector<IntPolynomial> hensel_lift(const IntPolynomial& f, const std::vector<IntPolynomial>& parts,
                                       const Integer& p, long k) {
    if (!f.is_monic()) throw Error("Hensel lifting needs a monic polynomial");
    if (parts.empty()) throw Error("Hensel lifting needs at least one part");
    if (k < 1) throw Error("precision must be positive");
    if (!is_prime(p) || !p.fits_slong_p()) throw Error("Hensel lifting needs a word-size prime");
    std::vector<IntPolynomial> monic_parts;
    for (const auto& part : parts) {
        IntPolynomial r = reduce_mod(part, p);
        if (r.degree() < 1) throw Error("Hensel lifting: parts must be nonconstant modulo p");
        if (r.leading() != 1) {
            Integer inv = inverse_mod(r.leading(), p);
            r = reduce_mod(r * inv, p);
        }
        monic_parts.push_back(r);
    }
    if (reduce_mod(f, p) != product(monic_parts, 0, monic_parts.size(), p)) {
        throw Error("Hensel lifting: parts do not multiply to the input modulo p");
    }
    std::vector<IntPolynomial> out(monic_parts.size());
    lift_tree(reduce_mod(f, ipow(p, static_cast<unsigned long>(k))), monic_parts, 0, monic_parts.size(), p, k, out);
    return out;
}

std::vector<IntPolynomial> factor_over_z(const IntPolynomial& f) {
    if (!f.is_monic()) throw Error("factor_over_z needs a monic polynomial");
    if (f.degree() <= 1) return {f};
    if (!is_squarefree(f)) throw Error("factor_over_z needs a squarefree polynomial");
    // Pick the good prime with the fewest modular factors.
    std::int64_t best_p = 0;
    FpFactorization best;
    int tried = 0;
    for (std::int64_t p : kSmallPrimes) {
        if (!squarefree_mod(f, p)) continue;
        FpFactorization fac = factor(FpPolynomial::from_integer(f, p));
        if (best_p == 0 || fac.size() < best.size()) {
            best_p = p;
            best = fac;
        }
        if (++tried == 5 || best.size() == 1) break;
    }
    if (best_p == 0) {
        for (std::int64_t p = 79; best_p == 0; p += 2) {
            if (!is_prime(Integer(static_cast<long>(p))) || !squarefree_mod(f, p)) continue;
            best_p = p;
            best = factor(FpPolynomial::from_integer(f, p));
        }
    }
    if (best.size() == 1) return {f};

    // Coefficient bound for any factor (Mignotte): 2^n * ||f||_2.
    Integer norm2 = 0;
    for (const auto& a : f.coefficients()) norm2 += a * a;
    Integer bound = ipow(Integer(2), static_cast<unsigned long>(f.degree())) * (isqrt(norm2) + 1);
    const Integer P(static_cast<long>(best_p));
    long k = 1;
    Integer pk = P;
    while (pk <= 2 * bound) {
        pk *= P;
        ++k;
    }
    std::vector<IntPolynomial> parts;
    for (const auto& [g, mult] : best) parts.push_back(g.to_integer());
    std::vector<IntPolynomial> lifted = hensel_lift(f, parts, P, k);

    std::vector<IntPolynomial> result;
    IntPolynomial rest = f;
    std::vector<bool> used(lifted.size(), false);
    std::size_t remaining = lifted.size();
    for (std::size_t size = 1; 2 * size <= remaining; ++size) {
        bool found = true;
        while (found) {
            found = false;
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < lifted.size(); ++i)
                if (!used[i]) idx.push_back(i);
            if (2 * size > idx.size()) break;
            std::vector<bool> mask(idx.size(), false);
            std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(size), true);
            do {
                IntPolynomial cand = IntPolynomial::constant(Integer(1));
                for (std::size_t j = 0; j < idx.size(); ++j)
                    if (mask[j]) cand = reduce_mod(cand * lifted[idx[j]], pk);
                cand = symmetric(cand, pk);
                auto [q, r] = divmod(rest, cand);
                if (r.is_zero()) {
                    result.push_back(cand);
                    rest = q;
                    for (std::size_t j = 0; j < idx.size(); ++j)
                        if (mask[j]) used[idx[j]] = true;
                    remaining -= size;
                    found = true;
                    break;
                }
            } while (std::prev_permutation(mask.begin(), mask.end()));
        }
    }
    if (rest.degree() > 0) result.push_back(rest);
    std::sort(result.begin(), result.end());
    return result;
}

bool excludes_factor_degree(const IntPolynomial& f, int degree, int max_primes) {
    if (!f.is_monic() || f.degree() > 16 || degree < 1 || degree >= f.degree()) return false;
    int good = 0;
    std::vector<int> degs;
    for (std::int64_t p : kSmallPrimes) {
        SmallFp fp(static_cast<std::uint64_t>(p));
        if (!fp.factor_degrees(fp.reduce(f), degs)) continue;
        std::uint32_t sums = 1u;
        for (int d : degs) sums |= sums << d;
        if (!(sums >> degree & 1u)) return true;
        if (++good == max_primes) break;
    }
    return false;
}

bool is_irreducible_over_q(const IntPolynomial& f) {
    if (!f.is_monic()) throw Error("irreducibility test needs a monic polynomial");
    const int n = f.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    if (n > 8) throw Error("irreducibility test is limited to degree <= 8");
    // Degree-pattern intersection across several good primes; bit d of
    // possible marks a divisor degree not yet excluded.
    std::uint32_t possible = ((1u << n) - 1u) & ~1u;
    int good = 0;
    std::vector<int> degs;
    for (std::int64_t p : kSmallPrimes) {
        SmallFp fp(static_cast<std::uint64_t>(p));
        if (!fp.factor_degrees(fp.reduce(f), degs)) continue;
        ++good;
        std::uint32_t sums = 1u;
        for (int d : degs) sums |= sums << d;
        possible &= sums;
        if (possible == 0) return true;
        if (good == 6) break;
    }
    if (good == 0 && !is_squarefree(f)) return false;
    // Certify with a full factorization.
    if (!is_squarefree(f)) return false;
    return factor_over_z(f).size() == 1;
}

}  // namespace weilkit

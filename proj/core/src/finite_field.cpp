#include "weilkit/finite_field.hpp"

#include <algorithm>
#include <random>

namespace weilkit {

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::int64_t norm(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

}  // namespace

std::int64_t inverse_mod_p(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = norm(a, p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw Error("element is not invertible modulo p");
    return norm(t, p);
}

FpPolynomial::FpPolynomial(std::int64_t p, std::vector<std::int64_t> coefficients) : p_(p), c_(std::move(coefficients)) {
    if (p < 2 || p >= (std::int64_t(1) << 31)) throw Error("prime out of range for F_p arithmetic");
    for (auto& v : c_) v = norm(v, p_);
    trim();
}

FpPolynomial FpPolynomial::from_integer(const IntPolynomial& f, std::int64_t p) {
    std::vector<std::int64_t> c;
    c.reserve(f.coefficients().size());
    const Integer P(static_cast<long>(p));
    for (const auto& a : f.coefficients()) c.push_back(mod(a, P).get_si());
    return FpPolynomial(p, std::move(c));
}

FpPolynomial FpPolynomial::monomial(std::int64_t p, std::int64_t c, int degree) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(degree) + 1, 0);
    v.back() = c;
    return FpPolynomial(p, std::move(v));
}

void FpPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPolynomial FpPolynomial::operator+(const FpPolynomial& o) const {
    std::vector<std::int64_t> c(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::int64_t v = (i < c_.size() ? c_[i] : 0) + (i < o.c_.size() ? o.c_[i] : 0);
        c[i] = v >= p_ ? v - p_ : v;
    }
    return FpPolynomial(p_, std::move(c));
}

FpPolynomial FpPolynomial::operator-(const FpPolynomial& o) const {
    std::vector<std::int64_t> c(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::int64_t v = (i < c_.size() ? c_[i] : 0) - (i < o.c_.size() ? o.c_[i] : 0);
        c[i] = v < 0 ? v + p_ : v;
    }
    return FpPolynomial(p_, std::move(c));
}

FpPolynomial FpPolynomial::operator*(const FpPolynomial& o) const {
    if (is_zero() || o.is_zero()) return FpPolynomial(p_, {});
    std::vector<std::int64_t> c(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] = (c[i + j] + mulmod(c_[i], o.c_[j], p_)) % p_;
    }
    return FpPolynomial(p_, std::move(c));
}

FpPolynomial FpPolynomial::scaled(std::int64_t s) const {
    std::vector<std::int64_t> c = c_;
    for (auto& v : c) v = mulmod(v, norm(s, p_), p_);
    return FpPolynomial(p_, std::move(c));
}

FpPolynomial FpPolynomial::monic() const {
    if (is_zero()) return *this;
    return scaled(inverse_mod_p(leading(), p_));
}

FpPolynomial FpPolynomial::derivative() const {
    std::vector<std::int64_t> c;
    for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(mulmod(c_[i], static_cast<std::int64_t>(i) % p_, p_));
    return FpPolynomial(p_, std::move(c));
}

std::pair<FpPolynomial, FpPolynomial> FpPolynomial::divmod(const FpPolynomial& d) const {
    if (d.is_zero()) throw Error("division by the zero polynomial over F_p");
    if (degree() < d.degree()) return {FpPolynomial(p_, {}), *this};
    std::vector<std::int64_t> r = c_, q(static_cast<std::size_t>(degree() - d.degree()) + 1, 0);
    const std::int64_t linv = inverse_mod_p(d.leading(), p_);
    const int dd = d.degree();
    for (int i = degree(); i >= dd; --i) {
        std::int64_t top = r[static_cast<std::size_t>(i)];
        if (top == 0) continue;
        std::int64_t f = mulmod(top, linv, p_);
        q[static_cast<std::size_t>(i - dd)] = f;
        for (int j = 0; j <= dd; ++j) {
            std::int64_t& slot = r[static_cast<std::size_t>(i - dd + j)];
            slot = norm(slot - mulmod(f, d.c_[static_cast<std::size_t>(j)], p_), p_);
        }
    }
    r.resize(static_cast<std::size_t>(dd));
    return {FpPolynomial(p_, std::move(q)), FpPolynomial(p_, std::move(r))};
}

bool FpPolynomial::operator<(const FpPolynomial& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    return c_ < o.c_;
}

IntPolynomial FpPolynomial::to_integer() const {
    std::vector<Integer> c;
    for (auto v : c_) c.emplace_back(static_cast<long>(v));
    return IntPolynomial(std::move(c));
}

FpPolynomial gcd(const FpPolynomial& a, const FpPolynomial& b) {
    FpPolynomial x = a, y = b;
    while (!y.is_zero()) {
        FpPolynomial r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

void xgcd(const FpPolynomial& a, const FpPolynomial& b, FpPolynomial& g, FpPolynomial& s, FpPolynomial& t) {
    const std::int64_t p = a.prime();
    FpPolynomial r0 = a, r1 = b;
    FpPolynomial s0(p, {1}), s1(p, {}), t0(p, {}), t1(p, {1});
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        FpPolynomial ns = s0 - q * s1, nt = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(ns);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    if (r0.is_zero()) {
        g = r0;
        s = s0;
        t = t0;
        return;
    }
    std::int64_t linv = inverse_mod_p(r0.leading(), p);
    g = r0.scaled(linv);
    s = s0.scaled(linv);
    t = t0.scaled(linv);
}

FpPolynomial powmod(const FpPolynomial& base, const Integer& exp, const FpPolynomial& modulus) {
    FpPolynomial result(base.prime(), {1});
    result = result % modulus;
    FpPolynomial b = base % modulus;
    const std::size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result) % modulus;
        if (mpz_tstbit(exp.get_mpz_t(), i)) result = (result * b) % modulus;
    }
    return result;
}

FpFactorization squarefree_factorization(const FpPolynomial& f) {
    const std::int64_t p = f.prime();
    FpFactorization out;
    if (f.degree() <= 0) return out;
    FpPolynomial a = f.monic();
    FpPolynomial g = gcd(a, a.derivative());
    FpPolynomial w = a / g;
    int i = 1;
    while (w.degree() > 0) {
        FpPolynomial y = gcd(w, g);
        FpPolynomial fac = w / y;
        if (fac.degree() > 0) out.emplace_back(fac, i);
        w = y;
        g = g / y;
        ++i;
    }
    if (g.degree() > 0) {
        // g is a p-th power: take the p-th root coefficientwise.
        std::vector<std::int64_t> root;
        for (int k = 0; k <= g.degree(); k += static_cast<int>(p)) root.push_back(g.coeff(k));
        for (auto& [h, m] : squarefree_factorization(FpPolynomial(p, root))) out.emplace_back(h, m * static_cast<int>(p));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return x.second != y.second ? x.second < y.second : x.first < y.first;
    });
    return out;
}

std::vector<std::pair<FpPolynomial, int>> distinct_degree_factorization(const FpPolynomial& f) {
    const std::int64_t p = f.prime();
    std::vector<std::pair<FpPolynomial, int>> out;
    FpPolynomial rest = f.monic();
    const FpPolynomial x(p, {0, 1});
    FpPolynomial h = x % rest;
    const Integer P(static_cast<long>(p));
    for (int d = 1; 2 * d <= rest.degree(); ++d) {
        h = powmod(h, P, rest);
        FpPolynomial g = gcd(h - x, rest);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            rest = rest / g;
            h = h % rest;
        }
    }
    if (rest.degree() > 0) out.emplace_back(rest, rest.degree());
    return out;
}

std::vector<FpPolynomial> equal_degree_factorization(const FpPolynomial& f, int d) {
    const std::int64_t p = f.prime();
    if (f.degree() == d) return {f.monic()};
    if (f.degree() % d != 0) throw Error("equal-degree factorization: degree mismatch");
    // Fixed seed keeps factorizations reproducible run to run.
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(f.degree() * 131 + d));
    std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
    const Integer qd = ipow(Integer(static_cast<long>(p)), static_cast<unsigned long>(d));
    const Integer half = (qd - 1) / 2;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(f.degree()));
        for (auto& v : c) v = coef(rng);
        FpPolynomial a(p, c);
        if (a.degree() < 1) continue;
        FpPolynomial g = gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            auto left = equal_degree_factorization(g, d);
            auto right = equal_degree_factorization(f / g, d);
            left.insert(left.end(), right.begin(), right.end());
            std::sort(left.begin(), left.end());
            return left;
        }
        FpPolynomial b(p, {});
        if (p == 2) {
            // Trace map a + a^2 + ... + a^(2^(d-1)) splits in characteristic 2.
            FpPolynomial term = a % f;
            b = term;
            for (int i = 1; i < d; ++i) {
                term = (term * term) % f;
                b = b + term;
            }
        } else {
            b = powmod(a, half, f) - FpPolynomial(p, {1});
        }
        g = gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            auto left = equal_degree_factorization(g, d);
            auto right = equal_degree_factorization(f / g, d);
            left.insert(left.end(), right.begin(), right.end());
            std::sort(left.begin(), left.end());
            return left;
        }
    }
    throw Error("equal-degree factorization did not converge");
}

bool is_irreducible(const FpPolynomial& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    FpPolynomial m = f.monic();
    if (gcd(m, m.derivative()).degree() > 0) return false;
    auto ddf = distinct_degree_factorization(m);
    return ddf.size() == 1 && ddf[0].second == m.degree();
}

FpFactorization factor(const FpPolynomial& f) {
    if (f.is_zero()) throw Error("cannot factor the zero polynomial over F_p");
    FpFactorization out;
    for (const auto& [part, mult] : squarefree_factorization(f)) {
        for (const auto& [prod, d] : distinct_degree_factorization(part)) {
            for (auto& irr : equal_degree_factorization(prod, d)) out.emplace_back(irr, mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first < y.first : x.second < y.second;
    });
    return out;
}

FpFactorization factor_over_prime_field(const IntPolynomial& f, const Integer& p) {
    if (!is_prime(p)) throw Error("factor_over_prime_field needs a prime modulus");
    if (!p.fits_slong_p() || p >= Integer(1L << 31)) throw Error("prime too large for word-size F_p arithmetic");
    FpPolynomial g = FpPolynomial::from_integer(f, p.get_si());
    if (g.is_zero()) throw Error("polynomial vanishes modulo p");
    return factor(g);
}

// ---- F_{p^n} ---------------------------------------------------------------

FiniteField::FiniteField(FpPolynomial modulus) : modulus_(modulus.monic()) {
    if (!is_irreducible(modulus_)) throw Error("finite field modulus must be irreducible");
}

FpPolynomial FiniteField::standard_modulus(std::int64_t p, int n) {
    if (n < 1) throw Error("extension degree must be positive");
    if (n == 1) return FpPolynomial(p, {0, 1});
    Integer total = ipow(Integer(static_cast<long>(p)), static_cast<unsigned long>(n));
    for (Integer idx = 0; idx < total; ++idx) {
        // idx encodes (c_0, ..., c_{n-1}) with c_0 most significant.
        std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1, 0);
        Integer rest = idx;
        for (int i = n - 1; i >= 0; --i) {
            c[static_cast<std::size_t>(i)] = mod(rest, Integer(static_cast<long>(p))).get_si();
            rest /= p;
        }
        c[static_cast<std::size_t>(n)] = 1;
        FpPolynomial m(p, c);
        if (is_irreducible(m)) return m;
    }
    throw Error("no irreducible polynomial found");
}

FiniteField FiniteField::standard(std::int64_t p, int n) { return FiniteField(standard_modulus(p, n)); }

Integer FiniteField::order() const {
    return ipow(Integer(static_cast<long>(characteristic())), static_cast<unsigned long>(degree()));
}

FiniteField::Element FiniteField::one() const { return embed(1); }

FiniteField::Element FiniteField::embed(std::int64_t c) const {
    Element e = zero();
    if (!e.empty()) e[0] = norm(c, characteristic());
    return e;
}

FiniteField::Element FiniteField::generator() const {
    return from_poly(FpPolynomial(characteristic(), {0, 1}));
}

FiniteField::Element FiniteField::from_poly(const FpPolynomial& f) const {
    FpPolynomial r = f % modulus_;
    Element e = zero();
    for (int i = 0; i <= r.degree(); ++i) e[static_cast<std::size_t>(i)] = r.coeff(i);
    return e;
}

FpPolynomial FiniteField::to_poly(const Element& a) const { return FpPolynomial(characteristic(), a); }

FiniteField::Element FiniteField::add(const Element& a, const Element& b) const {
    Element out(a.size());
    const std::int64_t p = characteristic();
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % p;
    return out;
}

FiniteField::Element FiniteField::sub(const Element& a, const Element& b) const {
    Element out(a.size());
    const std::int64_t p = characteristic();
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = norm(a[i] - b[i], p);
    return out;
}

FiniteField::Element FiniteField::neg(const Element& a) const { return sub(zero(), a); }

FiniteField::Element FiniteField::mul(const Element& a, const Element& b) const {
    return from_poly(to_poly(a) * to_poly(b));
}

FiniteField::Element FiniteField::inv(const Element& a) const {
    if (is_zero(a)) throw Error("inverse of zero in a finite field");
    FpPolynomial g, s, t;
    xgcd(to_poly(a), modulus_, g, s, t);
    return from_poly(s);
}

FiniteField::Element FiniteField::pow(const Element& a, const Integer& e) const {
    return from_poly(powmod(to_poly(a), e, modulus_));
}

bool FiniteField::is_zero(const Element& a) const {
    return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; });
}

// ---- polynomials over F_q --------------------------------------------------

FqPolynomial::FqPolynomial(std::shared_ptr<const FiniteField> field, std::vector<FiniteField::Element> coefficients)
    : field_(std::move(field)), c_(std::move(coefficients)) {
    trim();
}

void FqPolynomial::trim() {
    while (!c_.empty() && field_->is_zero(c_.back())) c_.pop_back();
}

FqPolynomial FqPolynomial::operator+(const FqPolynomial& o) const {
    std::vector<FiniteField::Element> c(std::max(c_.size(), o.c_.size()), field_->zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < c_.size()) c[i] = field_->add(c[i], c_[i]);
        if (i < o.c_.size()) c[i] = field_->add(c[i], o.c_[i]);
    }
    return FqPolynomial(field_, std::move(c));
}

FqPolynomial FqPolynomial::operator-(const FqPolynomial& o) const {
    std::vector<FiniteField::Element> c(std::max(c_.size(), o.c_.size()), field_->zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < c_.size()) c[i] = field_->add(c[i], c_[i]);
        if (i < o.c_.size()) c[i] = field_->sub(c[i], o.c_[i]);
    }
    return FqPolynomial(field_, std::move(c));
}

FqPolynomial FqPolynomial::operator*(const FqPolynomial& o) const {
    if (is_zero() || o.is_zero()) return FqPolynomial(field_, {});
    std::vector<FiniteField::Element> c(c_.size() + o.c_.size() - 1, field_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] = field_->add(c[i + j], field_->mul(c_[i], o.c_[j]));
    return FqPolynomial(field_, std::move(c));
}

FqPolynomial FqPolynomial::derivative() const {
    std::vector<FiniteField::Element> c;
    for (std::size_t i = 1; i < c_.size(); ++i)
        c.push_back(field_->mul(c_[i], field_->embed(static_cast<std::int64_t>(i % static_cast<std::size_t>(field_->characteristic())))));
    return FqPolynomial(field_, std::move(c));
}

FqPolynomial FqPolynomial::monic() const {
    if (is_zero()) return *this;
    FiniteField::Element linv = field_->inv(c_.back());
    std::vector<FiniteField::Element> c;
    for (const auto& a : c_) c.push_back(field_->mul(a, linv));
    return FqPolynomial(field_, std::move(c));
}

std::pair<FqPolynomial, FqPolynomial> FqPolynomial::divmod(const FqPolynomial& d) const {
    if (d.is_zero()) throw Error("division by the zero polynomial over F_q");
    if (degree() < d.degree()) return {FqPolynomial(field_, {}), *this};
    std::vector<FiniteField::Element> r = c_;
    std::vector<FiniteField::Element> q(static_cast<std::size_t>(degree() - d.degree()) + 1, field_->zero());
    FiniteField::Element linv = field_->inv(d.c_.back());
    const int dd = d.degree();
    for (int i = degree(); i >= dd; --i) {
        const auto top = r[static_cast<std::size_t>(i)];
        if (field_->is_zero(top)) continue;
        auto f = field_->mul(top, linv);
        q[static_cast<std::size_t>(i - dd)] = f;
        for (int j = 0; j <= dd; ++j) {
            auto& slot = r[static_cast<std::size_t>(i - dd + j)];
            slot = field_->sub(slot, field_->mul(f, d.c_[static_cast<std::size_t>(j)]));
        }
    }
    r.resize(static_cast<std::size_t>(dd));
    return {FqPolynomial(field_, std::move(q)), FqPolynomial(field_, std::move(r))};
}

FqPolynomial gcd(const FqPolynomial& a, const FqPolynomial& b) {
    FqPolynomial x = a, y = b;
    while (!y.is_zero()) {
        FqPolynomial r = x.divmod(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

bool FqPolynomial::is_squarefree() const {
    if (degree() <= 0) return !is_zero();
    return gcd(*this, derivative()).degree() == 0;
}

namespace {

FqPolynomial fq_powmod(const FqPolynomial& base, const Integer& e, const FqPolynomial& m) {
    const auto& F = base.field();
    FqPolynomial result(base.field_ptr(), {F.one()});
    result = result.divmod(m).second;
    FqPolynomial b = base.divmod(m).second;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result).divmod(m).second;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b).divmod(m).second;
    }
    return result;
}

}  // namespace

std::vector<int> FqPolynomial::factor_degrees() const {
    if (!is_squarefree()) throw Error("factor_degrees requires a squarefree polynomial");
    std::vector<int> out;
    FqPolynomial rest = monic();
    const FqPolynomial x(field_, {field_->zero(), field_->one()});
    const Integer q = field_->order();
    FqPolynomial h = x.divmod(rest).second;
    for (int d = 1; 2 * d <= rest.degree(); ++d) {
        h = fq_powmod(h, q, rest);
        FqPolynomial g = gcd(h - x, rest);
        if (g.degree() > 0) {
            for (int i = 0; i < g.degree() / d; ++i) out.push_back(d);
            rest = rest.divmod(g).first;
            h = h.divmod(rest).second;
        }
    }
    if (rest.degree() > 0) out.push_back(rest.degree());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace weilkit

#include "weilkit/dieudonne.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>

#include "weilkit/finite_field.hpp"

namespace weilkit {

namespace {

// F_i F_j = p^e F_(i+j) with e = (|i| + |j| - |i+j|) / 2.
int product_exponent(int i, int j) { return (std::abs(i) + std::abs(j) - std::abs(i + j)) / 2; }

}  // namespace

DieudonneAlgebra::DieudonneAlgebra(WeilSet w, long k) : w_(std::move(w)), witt_(w_.context.p, w_.context.r, k) {
    const int r = w_.context.r;
    if ((w_.degree * r) % 2 != 0) throw Error("N = deg(w) r / 2 is not an integer");
    N_ = w_.degree * r / 2;
    const Integer& p = witt_.p();
    const Integer& pk = witt_.context().modulus();
    const std::size_t n = witt_rank();

    // h_w(F^r, V^r) with F^(a/2) V^(b/2) -> p^(r min(a,b)/2) F_(r(a-b)/2).
    relation_.assign(n + 1, Integer(0));
    for (const auto& [key, c] : w_.h.terms()) {
        const int diff = r * (key.first - key.second), low = r * std::min(key.first, key.second);
        if (diff % 2 != 0 || low % 2 != 0) throw Error("relation involves a fractional power of F");
        const int idx = diff / 2;
        if (std::abs(idx) > N_) throw Error("relation exceeds the expected degree");
        relation_[static_cast<std::size_t>(idx + N_)] += c * ipow(p, static_cast<unsigned long>(low / 2));
    }
    const Integer top = relation_.back(), bottom = relation_.front();
    if (gcd(top, p) != 1 || gcd(bottom, p) != 1) throw Error("relation is not a unit at both ends");
    const Integer top_inv = inverse_mod(top, pk), bottom_inv = inverse_mod(bottom, pk);
    auto rho = [&](int j) -> const Integer& { return relation_[static_cast<std::size_t>(j + N_)]; };

    rewrites_.assign(static_cast<std::size_t>(4 * N_ + 1), std::vector<Integer>(n, Integer(0)));
    auto at = [&](int m) -> std::vector<Integer>& { return rewrites_[static_cast<std::size_t>(m + 2 * N_)]; };
    for (int m = -N_; m < N_; ++m) at(m)[slot(m)] = 1;
    // F_(m-N) rho = 0 eliminates F_m from the top.
    for (int m = N_; m <= 2 * N_; ++m) {
        std::vector<Integer> v(n, Integer(0));
        for (int j = -N_; j < N_; ++j) {
            if (rho(j) == 0) continue;
            const Integer c = -top_inv * rho(j) * ipow(p, static_cast<unsigned long>(product_exponent(m - N_, j)));
            const auto& src = at(m - N_ + j);
            for (std::size_t l = 0; l < n; ++l) v[l] += c * src[l];
        }
        for (auto& x : v) x = mod(x, pk);
        at(m) = std::move(v);
    }
    // F_(m+N) rho = 0 eliminates F_m from the bottom.
    for (int m = -N_ - 1; m >= -2 * N_; --m) {
        const int s = m + N_;
        std::vector<Integer> v(n, Integer(0));
        for (int j = -N_ + 1; j <= N_; ++j) {
            if (rho(j) == 0) continue;
            const Integer c = -bottom_inv * rho(j) * ipow(p, static_cast<unsigned long>(product_exponent(s, j)));
            const auto& src = at(s + j);
            for (std::size_t l = 0; l < n; ++l) v[l] += c * src[l];
        }
        for (auto& x : v) x = mod(x, pk);
        at(m) = std::move(v);
    }

    products_.reserve(n * n);
    for (int i = -N_; i < N_; ++i)
        for (int j = -N_; j < N_; ++j) {
            const Integer scale = ipow(p, static_cast<unsigned long>(product_exponent(i, j)));
            std::vector<Integer> v = at(i + j);
            for (auto& x : v) x = mod(x * scale, pk);
            products_.push_back(std::move(v));
        }
}

DieudonneAlgebra build_dieudonne(const WeilSet& w, long k) {
    if (k < 2) throw PreconditionError("Dieudonne algebra precision must be at least 2");
    DieudonneAlgebra alg(w, k);
    const auto report = check_structure(alg, false);
    if (!report.ok()) throw Error("Dieudonne algebra failed its structural checks");
    return alg;
}

const std::vector<Integer>& DieudonneAlgebra::rewrite(int n) const {
    if (n < -2 * N_ || n > 2 * N_) throw Error("F_n outside the precomputed rewriting range");
    return rewrites_[static_cast<std::size_t>(n + 2 * N_)];
}

const std::vector<Integer>& DieudonneAlgebra::product_rule(int i, int j) const {
    if (i < -N_ || i >= N_ || j < -N_ || j >= N_) throw Error("basis index out of range");
    return products_[slot(i) * witt_rank() + slot(j)];
}

DieudonneAlgebra::Element DieudonneAlgebra::zero() const { return Element(witt_rank(), witt_.zero()); }

DieudonneAlgebra::Element DieudonneAlgebra::scalar(const Witt& a) const {
    Element e = zero();
    e[slot(0)] = a;
    return e;
}

DieudonneAlgebra::Element DieudonneAlgebra::basis_element(int i) const {
    if (i < -N_ || i >= N_) throw Error("basis index out of range");
    Element e = zero();
    e[slot(i)] = witt_.one();
    return e;
}

DieudonneAlgebra::Element DieudonneAlgebra::power_element(int n) const {
    const auto& v = rewrite(n);
    Element e = zero();
    for (std::size_t l = 0; l < v.size(); ++l) e[l] = witt_.from_integer(v[l]);
    return e;
}

DieudonneAlgebra::Element DieudonneAlgebra::add(const Element& a, const Element& b) const {
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = witt_.add(a[i], b[i]);
    return out;
}

DieudonneAlgebra::Element DieudonneAlgebra::sub(const Element& a, const Element& b) const {
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = witt_.sub(a[i], b[i]);
    return out;
}

DieudonneAlgebra::Element DieudonneAlgebra::scale(const Integer& s, const Element& a) const {
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = witt_.scale(s, a[i]);
    return out;
}

// (a F_i)(b F_j) = a sigma^i(b) F_i F_j.
DieudonneAlgebra::Element DieudonneAlgebra::multiply(const Element& a, const Element& b) const {
    const std::size_t n = witt_rank(), rr = static_cast<std::size_t>(r());
    std::vector<std::vector<Integer>> acc(n, std::vector<Integer>(rr, Integer(0)));
    for (int i = -N_; i < N_; ++i) {
        const Witt& x = a[slot(i)];
        if (witt_.is_zero(x)) continue;
        for (int j = -N_; j < N_; ++j) {
            const Witt& y = b[slot(j)];
            if (witt_.is_zero(y)) continue;
            const Witt c = witt_.mul(x, witt_.frobenius_power(y, i));
            const auto& rule = product_rule(i, j);
            for (std::size_t l = 0; l < n; ++l) {
                if (rule[l] == 0) continue;
                for (std::size_t t = 0; t < rr; ++t) acc[l][t] += rule[l] * c[t];
            }
        }
    }
    Element out(n);
    for (std::size_t l = 0; l < n; ++l) {
        out[l] = witt_.zero();
        for (std::size_t t = 0; t < rr; ++t) out[l][t] = witt_.context().reduce(acc[l][t]);
    }
    return out;
}

DieudonneAlgebra::Element DieudonneAlgebra::power(const Element& a, unsigned long e) const {
    Element result = one(), base = a;
    while (e > 0) {
        if (e & 1UL) result = multiply(result, base);
        e >>= 1;
        if (e > 0) base = multiply(base, base);
    }
    return result;
}

bool DieudonneAlgebra::is_zero(const Element& a) const {
    return std::all_of(a.begin(), a.end(), [&](const Witt& x) { return witt_.is_zero(x); });
}

bool DieudonneAlgebra::is_zero_mod_p(const Element& a) const {
    for (const auto& x : a)
        for (const auto& c : x)
            if (mod(c, p()) != 0) return false;
    return true;
}

std::vector<Integer> DieudonneAlgebra::coordinates(const Element& a) const {
    std::vector<Integer> out;
    out.reserve(zp_rank());
    for (const auto& x : a) out.insert(out.end(), x.begin(), x.end());
    return out;
}

DieudonneAlgebra::Element DieudonneAlgebra::from_coordinates(const std::vector<Integer>& c) const {
    if (c.size() != zp_rank()) throw Error("coordinate vector has the wrong length");
    const std::size_t rr = static_cast<std::size_t>(r());
    Element out = zero();
    for (std::size_t i = 0; i < c.size(); ++i) out[i / rr][i % rr] = witt_.context().reduce(c[i]);
    return out;
}

DieudonneAlgebra::Element DieudonneAlgebra::zp_basis(std::size_t index) const {
    std::vector<Integer> c(zp_rank(), Integer(0));
    c.at(index) = 1;
    return from_coordinates(c);
}

std::string DieudonneAlgebra::zp_basis_label(std::size_t index) const {
    const std::size_t rr = static_cast<std::size_t>(r());
    const int i = static_cast<int>(index / rr) - N_;
    const std::size_t alpha = index % rr;
    std::string f = "F_" + std::to_string(i);
    if (alpha == 0) return f;
    return "t^" + std::to_string(alpha) + "*" + f;
}

Integer DieudonneAlgebra::structure_constant(std::size_t a, std::size_t b, std::size_t c) const {
    return coordinates(multiply(zp_basis(a), zp_basis(b))).at(c);
}

DieudonneAlgebra::Element DieudonneAlgebra::central_image(int i) const {
    const unsigned long e = static_cast<unsigned long>(r()) * static_cast<unsigned long>(std::abs(i));
    if (i > 0) return power(frobenius(), e);
    if (i < 0) return power(verschiebung(), e);
    return one();
}

std::vector<int> DieudonneAlgebra::center_basis_exponents() const {
    std::vector<int> out;
    if (w_.degree % 2 == 0) {
        const int d = w_.degree / 2;
        for (int i = d; i > -d; --i) out.push_back(i);
    } else {
        const int d0 = (w_.degree - 1) / 2;
        for (int i = d0; i >= -d0; --i) out.push_back(i);
    }
    return out;
}

DieudonneStructureReport check_structure(const DieudonneAlgebra& alg, bool full) {
    DieudonneStructureReport rep;
    const int N = alg.N(), r = alg.r();
    const auto& W = alg.witt();

    std::vector<DieudonneAlgebra::Element> basis;
    if (full) {
        for (std::size_t i = 0; i < alg.zp_rank(); ++i) basis.push_back(alg.zp_basis(i));
    } else {
        for (int i = -N; i < N; ++i) basis.push_back(alg.basis_element(i));
    }
    const std::size_t n = basis.size();
    std::vector<DieudonneAlgebra::Element> pairs(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) pairs[a * n + b] = alg.multiply(basis[a], basis[b]);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                ++rep.triples_checked;
                if (alg.multiply(pairs[a * n + b], basis[c]) != alg.multiply(basis[a], pairs[b * n + c]))
                    ++rep.associativity_failures;
            }

    const auto p_one = alg.scale(alg.p(), alg.one());
    rep.fv_equals_p = alg.multiply(alg.frobenius(), alg.verschiebung()) == p_one;
    rep.vf_equals_p = alg.multiply(alg.verschiebung(), alg.frobenius()) == p_one;

    rep.sigma_order_r = true;
    for (int a = 0; a < r; ++a) {
        auto x = W.basis(a), y = x;
        for (int i = 0; i < r; ++i) y = W.frobenius(y);
        if (y != x || W.frobenius_power(x, r) != x) rep.sigma_order_r = false;
        if (r > 1 && a == 1 && W.frobenius(x) == x) rep.sigma_order_r = false;
    }

    rep.exponent_rule = true;
    for (int i = -2 * N; i <= 2 * N; ++i)
        for (int j = -2 * N; j <= 2 * N; ++j) {
            const int twice = std::abs(i) + std::abs(j) - std::abs(i + j);
            if (twice < 0 || twice % 2 != 0) rep.exponent_rule = false;
        }
    for (int i = 0; i <= 2 * N; ++i) {
        if (alg.power(alg.frobenius(), static_cast<unsigned long>(i)) != alg.power_element(i)) rep.exponent_rule = false;
        if (alg.power(alg.verschiebung(), static_cast<unsigned long>(i)) != alg.power_element(-i))
            rep.exponent_rule = false;
    }

    rep.rank_formula = alg.zp_rank() == static_cast<std::size_t>(r) * static_cast<std::size_t>(r) *
                                            static_cast<std::size_t>(alg.weil_set().degree);

    // h_w(F^r, V^r) evaluated with F^(a/2) -> F^(r a / 2).
    auto rel = alg.zero();
    for (const auto& [key, c] : alg.weil_set().h.terms()) {
        const auto f = alg.power(alg.frobenius(), static_cast<unsigned long>(r * key.first / 2));
        const auto v = alg.power(alg.verschiebung(), static_cast<unsigned long>(r * key.second / 2));
        rel = alg.add(rel, alg.scale(c, alg.multiply(f, v)));
    }
    rep.relation_vanishes = alg.is_zero(rel);
    return rep;
}

IntegerMatrix canonical_module(const IntegerMatrix& columns, const Integer& p, long j) {
    const std::size_t n = columns.rows();
    const Integer pj = ipow(p, static_cast<unsigned long>(std::max(j, 0L)));
    IntegerMatrix rows(0, 0);
    for (std::size_t c = 0; c < columns.cols(); ++c) {
        auto v = columns.col(c);
        for (auto& x : v) x = mod(x, pj);
        rows.append_row(v);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Integer> v(n, Integer(0));
        v[i] = pj;
        rows.append_row(v);
    }
    return row_lattice_basis(rows);
}

CenterReport verify_center(const DieudonneAlgebra& alg) {
    CenterReport rep;
    rep.precision = alg.precision();
    rep.expected_rank = static_cast<std::size_t>(alg.weil_set().degree);
    const std::size_t n = alg.zp_rank();

    std::vector<DieudonneAlgebra::Element> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(alg.zp_basis(i));
    // Column c: coordinates of [b_c, b_g] for every generator b_g, stacked.
    IntegerMatrix system(n * n, n);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t c = 0; c < n; ++c) {
            const auto comm = alg.coordinates(
                alg.sub(alg.multiply(basis[c], basis[g]), alg.multiply(basis[g], basis[c])));
            for (std::size_t row = 0; row < n; ++row) system(g * n + row, c) = comm[row];
        }
    const LocalKernel ker = kernel_mod_prime_power(system, alg.p(), alg.precision());
    rep.center_basis = ker.free_part;
    rep.center_rank = ker.free_part.cols();
    rep.stable_precision = ker.stable_precision;

    const auto exps = alg.center_basis_exponents();
    rep.image_basis = IntegerMatrix(n, exps.size());
    for (std::size_t c = 0; c < exps.size(); ++c) {
        const auto v = alg.coordinates(alg.central_image(exps[c]));
        for (std::size_t i = 0; i < n; ++i) rep.image_basis(i, c) = v[i];
    }
    if (rep.stable_precision < 1) return rep;

    const Integer pj = ipow(alg.p(), static_cast<unsigned long>(rep.stable_precision));
    const IntegerMatrix a = canonical_module(rep.center_basis, alg.p(), rep.stable_precision);
    const IntegerMatrix b = canonical_module(rep.image_basis, alg.p(), rep.stable_precision);
    rep.equal = a == b;
    if (!rep.equal) {
        auto find_outside = [&](const IntegerMatrix& cols, const IntegerMatrix& lattice) {
            for (std::size_t c = 0; c < cols.cols(); ++c) {
                auto v = cols.col(c);
                for (auto& x : v) x = mod(x, pj);
                if (!solve_in_row_lattice(lattice, v)) rep.witness = v;
                if (rep.witness) return;
            }
        };
        find_outside(rep.center_basis, b);
        if (!rep.witness) find_outside(rep.image_basis, a);
    }
    return rep;
}

CenterComparison verify_center_at_two_precisions(const WeilSet& w, long k) {
    CenterComparison cmp;
    const auto low = build_dieudonne(w, k);
    const auto high = build_dieudonne(w, k + 2);
    cmp.low = verify_center(low);
    cmp.high = verify_center(high);
    cmp.common_precision = std::min(cmp.low.stable_precision, cmp.high.stable_precision);
    if (cmp.common_precision >= 1) {
        const Integer& p = w.context.p;
        cmp.truncations_agree = canonical_module(cmp.low.center_basis, p, cmp.common_precision) ==
                                    canonical_module(cmp.high.center_basis, p, cmp.common_precision) &&
                                canonical_module(cmp.low.image_basis, p, cmp.common_precision) ==
                                    canonical_module(cmp.high.image_basis, p, cmp.common_precision);
    }
    return cmp;
}

std::string to_string(OrdinaryVerdict v) { return v == OrdinaryVerdict::verified ? "verified" : "inconclusive"; }

namespace {

using Element = DieudonneAlgebra::Element;

// Minimal polynomial over F_p of a in the corner algebra with identity e.
FpPolynomial minimal_polynomial_mod_p(const DieudonneAlgebra& alg, const Element& a, const Element& e) {
    const std::int64_t p = alg.p().get_si();
    const std::size_t n = alg.zp_rank();
    std::vector<std::vector<std::int64_t>> rows, combos;
    std::vector<std::size_t> pivots;
    Element pw = e;
    for (std::size_t deg = 0; deg <= n; ++deg) {
        std::vector<std::int64_t> v(n), combo(n + 2, 0);
        const auto c = alg.coordinates(pw);
        for (std::size_t i = 0; i < n; ++i) v[i] = mod(c[i], alg.p()).get_si();
        combo[deg] = 1;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const std::int64_t f = v[pivots[k]];
            if (f == 0) continue;
            for (std::size_t i = 0; i < n; ++i) v[i] = ((v[i] - f * rows[k][i]) % p + p) % p;
            for (std::size_t i = 0; i < combo.size(); ++i) combo[i] = ((combo[i] - f * combos[k][i]) % p + p) % p;
        }
        const auto it = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
        if (it == v.end()) {
            combo.resize(deg + 1);
            return FpPolynomial(p, combo).monic();
        }
        const std::size_t piv = static_cast<std::size_t>(it - v.begin());
        const std::int64_t inv = inverse_mod_p(v[piv], p);
        for (auto& x : v) x = x * inv % p;
        for (auto& x : combo) x = x * inv % p;
        rows.push_back(std::move(v));
        combos.push_back(std::move(combo));
        pivots.push_back(piv);
        pw = alg.multiply(pw, a);
    }
    throw Error("minimal polynomial computation did not terminate");
}

Element evaluate(const DieudonneAlgebra& alg, const FpPolynomial& f, const Element& a, const Element& e) {
    Element acc = alg.zero();
    for (int i = f.degree(); i >= 0; --i)
        acc = alg.add(alg.multiply(acc, a), alg.scale(Integer(static_cast<long>(f.coeff(i))), e));
    return acc;
}

// Newton iteration e -> 3e^2 - 2e^3 from an idempotent mod p.
std::optional<Element> lift_idempotent(const DieudonneAlgebra& alg, Element e) {
    for (int it = 0; it < 64; ++it) {
        const Element e2 = alg.multiply(e, e);
        if (e2 == e) return e;
        e = alg.sub(alg.scale(Integer(3), e2), alg.scale(Integer(2), alg.multiply(e2, e)));
    }
    return std::nullopt;
}

std::size_t rank_mod_p(const std::vector<std::vector<Integer>>& vectors, const Integer& p) {
    if (vectors.empty()) return 0;
    IntegerMatrix m(0, 0);
    for (const auto& v : vectors) m.append_row(v);
    return static_cast<std::size_t>(row_echelon_mod_p(m, p).rows());
}

std::size_t corner_rank(const DieudonneAlgebra& alg, const Element& e) {
    std::vector<std::vector<Integer>> vs;
    for (std::size_t i = 0; i < alg.zp_rank(); ++i)
        vs.push_back(alg.coordinates(alg.multiply(alg.multiply(e, alg.zp_basis(i)), e)));
    return rank_mod_p(vs, alg.p());
}

bool linked(const DieudonneAlgebra& alg, const Element& e, const Element& f) {
    for (std::size_t i = 0; i < alg.zp_rank(); ++i)
        if (!alg.is_zero_mod_p(alg.multiply(alg.multiply(e, alg.zp_basis(i)), f))) return true;
    return false;
}

// Splits e = e1 + e2 into nonzero orthogonal idempotents of e D e, if a random
// element of the corner has a minimal polynomial with two coprime factors.
std::optional<std::pair<Element, Element>> split_idempotent(const DieudonneAlgebra& alg, const Element& e,
                                                            std::mt19937_64& rng) {
    const std::int64_t p = alg.p().get_si();
    std::uniform_int_distribution<std::int64_t> dist(0, p - 1);
    for (int trial = 0; trial < 64; ++trial) {
        std::vector<Integer> c(alg.zp_rank());
        for (auto& x : c) x = Integer(static_cast<long>(dist(rng)));
        const Element a = alg.multiply(alg.multiply(e, alg.from_coordinates(c)), e);
        const FpPolynomial mu = minimal_polynomial_mod_p(alg, a, e);
        const auto fac = factor(mu);
        if (fac.size() < 2) continue;
        FpPolynomial part = FpPolynomial::monomial(p, 1, 0);
        for (int i = 0; i < fac[0].second; ++i) part = part * fac[0].first;
        const FpPolynomial rest = mu / part;
        FpPolynomial g, s, t;
        xgcd(part, rest, g, s, t);
        const FpPolynomial idem = (t * rest) % mu;
        const auto lifted = lift_idempotent(alg, evaluate(alg, idem, a, e));
        if (!lifted || alg.is_zero_mod_p(*lifted) || alg.is_zero_mod_p(alg.sub(e, *lifted))) continue;
        return std::make_pair(*lifted, alg.sub(e, *lifted));
    }
    return std::nullopt;
}

}  // namespace

OrdinaryCheck ordinary_matrix_check(const DieudonneAlgebra& alg, unsigned long seed) {
    for (const auto& c : alg.weil_set().classes)
        if (slope_type(c).type != SlopeType::ordinary)
            throw PreconditionError("ordinary_matrix_check needs every class to be ordinary");
    if (!alg.p().fits_slong_p() || alg.p() >= Integer(1L << 31)) throw Error("prime too large");

    OrdinaryCheck out;
    std::mt19937_64 rng(seed);
    std::vector<Element> work{alg.one()}, primitive;
    while (!work.empty()) {
        Element e = std::move(work.back());
        work.pop_back();
        if (auto parts = split_idempotent(alg, e, rng)) {
            work.push_back(std::move(parts->first));
            work.push_back(std::move(parts->second));
        } else {
            primitive.push_back(std::move(e));
        }
    }

    // Group primitive idempotents into blocks: e ~ f when e D f != 0 mod p.
    const std::size_t m = primitive.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (find(a) != find(b) && (linked(alg, primitive[a], primitive[b]) || linked(alg, primitive[b], primitive[a])))
                parent[find(a)] = find(b);
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> root_block(m, m);
    for (std::size_t a = 0; a < m; ++a) {
        const std::size_t root = find(a);
        if (root_block[root] == m) {
            root_block[root] = blocks.size();
            blocks.emplace_back();
        }
        blocks[root_block[root]].push_back(a);
    }
    const std::size_t r = static_cast<std::size_t>(alg.r());
    for (const auto& b : blocks)
        if (b.size() != r) {
            out.note = "a block of D_w/p does not have r primitive idempotents";
            return out;
        }

    std::vector<Element> idem(r, alg.zero());
    for (const auto& b : blocks)
        for (std::size_t i = 0; i < r; ++i) idem[i] = alg.add(idem[i], primitive[b[i]]);

    Element total = alg.zero();
    bool ok = true;
    for (std::size_t i = 0; i < r; ++i) {
        total = alg.add(total, idem[i]);
        if (alg.multiply(idem[i], idem[i]) != idem[i]) ok = false;
        for (std::size_t j = 0; j < r; ++j)
            if (i != j && !alg.is_zero(alg.multiply(idem[i], idem[j]))) ok = false;
        out.corner_ranks.push_back(corner_rank(alg, idem[i]));
        if (out.corner_ranks.back() != static_cast<std::size_t>(alg.weil_set().degree)) ok = false;
    }
    if (total != alg.one()) ok = false;
    out.idempotents = std::move(idem);
    if (ok) {
        out.verdict = OrdinaryVerdict::verified;
    } else {
        out.note = "lifted idempotents failed the orthogonality or corner-rank check";
    }
    return out;
}

}  // namespace weilkit

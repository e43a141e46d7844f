#include "weilkit/central_orders.hpp"

#include <algorithm>
#include <numeric>

namespace weilkit {

namespace {

RatPolynomial reduce(const RatPolynomial& a, const RatPolynomial& modulus) { return divmod(a, modulus).second; }

std::vector<Rational> dense(const RatPolynomial& a, std::size_t n) {
    std::vector<Rational> out(n, Rational(0));
    for (int i = 0; i <= a.degree(); ++i) out[static_cast<std::size_t>(i)] = a.coeff(i);
    return out;
}

RatPolynomial from_dense(const std::vector<Rational>& v) { return RatPolynomial(v); }

// s with s * a = 1 mod m, for coprime a and m over Q.
RatPolynomial inverse_mod(const RatPolynomial& a, const RatPolynomial& m) {
    RatPolynomial r0 = m, r1 = reduce(a, m), s0, s1 = RatPolynomial::constant(Rational(1));
    while (!r1.is_zero()) {
        auto [quo, rem] = divmod(r0, r1);
        RatPolynomial s2 = s0 - quo * s1;
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0) throw Error("polynomials are not coprime");
    return reduce(s0 * (Rational(1) / r0.coeff(0)), m);
}

std::string label(int exponent) {
    if (exponent == 0) return "1";
    const std::string base = exponent > 0 ? "F" : "V";
    const int k = exponent > 0 ? exponent : -exponent;
    return k == 1 ? base : base + "^" + std::to_string(k);
}

bool all_integral(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.get_den() == 1; });
}

CentralOrder::Vec to_integer_vec(const std::vector<Rational>& v) {
    CentralOrder::Vec out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.get_num());
    return out;
}

}  // namespace

RatPolynomial frobenius_element(const IntPolynomial& P) {
    return reduce(RatPolynomial::x(), to_rational(P));
}

RatPolynomial verschiebung_element(const IntPolynomial& P, const Integer& q) {
    const Integer c0 = P.coeff(0);
    if (c0 == 0) throw Error("x is not invertible modulo P");
    // P = x G + c0, so x^(-1) = -G / c0.
    std::vector<Rational> g;
    for (int i = 1; i <= P.degree(); ++i) g.emplace_back(P.coeff(i));
    Rational scale(Integer(-1), c0);
    scale.canonicalize();
    RatPolynomial inv_x = RatPolynomial(g) * scale;
    return reduce(inv_x * Rational(q), to_rational(P));
}

CentralOrder build_order(const WeilSet& w) {
    CentralOrder o;
    o.w_ = w;
    const int n = w.P.degree();
    const int d_plus = n / 2;
    const int d_minus = n % 2 == 0 ? n / 2 - 1 : n / 2;
    for (int i = d_plus; i >= -d_minus; --i) o.exponents_.push_back(i);
    const RatPolynomial modulus = to_rational(w.P);
    const RatPolynomial F = frobenius_element(w.P);
    const RatPolynomial V = verschiebung_element(w.P, w.context.q);
    const std::size_t nn = static_cast<std::size_t>(n);
    o.basis_ = RationalMatrix(nn, nn);
    for (std::size_t row = 0; row < nn; ++row) {
        const int e = o.exponents_[row];
        o.labels_.push_back(label(e));
        if (e == 0) o.index_of_one_ = row;
        RatPolynomial el = RatPolynomial::constant(Rational(1));
        for (int k = 0; k < std::abs(e); ++k) el = reduce(el * (e > 0 ? F : V), modulus);
        const auto coords = dense(el, nn);
        for (std::size_t c = 0; c < nn; ++c) o.basis_(row, c) = coords[c];
    }
    auto inv = inverse(o.basis_);
    if (!inv) throw Error("central order basis is linearly dependent");
    o.basis_inverse_ = std::move(*inv);
    o.table_.assign(nn * nn * nn, Integer(0));
    for (std::size_t i = 0; i < nn; ++i) {
        const RatPolynomial bi = from_dense(o.basis_.row(i));
        for (std::size_t j = 0; j < nn; ++j) {
            const auto c = o.coordinates(reduce(bi * from_dense(o.basis_.row(j)), modulus));
            if (!all_integral(c)) throw Error("central order is not closed under multiplication");
            for (std::size_t k = 0; k < nn; ++k) o.table_[(i * nn + j) * nn + k] = c[k].get_num();
        }
    }
    return o;
}

CentralOrder::Vec CentralOrder::unit(std::size_t i) const {
    Vec v(rank(), Integer(0));
    v.at(i) = 1;
    return v;
}

CentralOrder::Vec CentralOrder::frobenius() const {
    const auto c = coordinates(frobenius_element(w_.P));
    return to_integer_vec(c);
}

CentralOrder::Vec CentralOrder::verschiebung() const {
    const auto c = coordinates(verschiebung_element(w_.P, w_.context.q));
    return to_integer_vec(c);
}

CentralOrder::Vec CentralOrder::multiply(const Vec& a, const Vec& b) const {
    const std::size_t n = rank();
    Vec out(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            const Integer ab = a[i] * b[j];
            for (std::size_t k = 0; k < n; ++k) out[k] += ab * structure_constant(i, j, k);
        }
    }
    return out;
}

RatPolynomial CentralOrder::to_polynomial(const Vec& a) const {
    std::vector<Rational> out(rank(), Rational(0));
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t c = 0; c < rank(); ++c) out[c] += Rational(a[i]) * basis_(i, c);
    return RatPolynomial(out);
}

std::vector<Rational> CentralOrder::coordinates(const RatPolynomial& element) const {
    const RatPolynomial red = reduce(element, to_rational(w_.P));
    const auto v = dense(red, rank());
    std::vector<Rational> out(rank(), Rational(0));
    for (std::size_t c = 0; c < rank(); ++c) {
        if (v[c] == 0) continue;
        for (std::size_t i = 0; i < rank(); ++i) out[i] += v[c] * basis_inverse_(c, i);
    }
    for (auto& x : out) x.canonicalize();
    return out;
}

bool CentralOrder::contains(const RatPolynomial& element) const { return all_integral(coordinates(element)); }

namespace {

// Value of h in the order, reducing F^(1/2) V^(1/2) to sqrt(q).
CentralOrder::Vec evaluate(const CentralOrder& o, const SymmetricPolynomial& h) {
    const auto& ctx = o.weil_set().context;
    CentralOrder::Vec total(o.rank(), Integer(0));
    const auto F = o.frobenius(), V = o.verschiebung();
    for (const auto& [key, c] : h.terms()) {
        if (c == 0) continue;
        int a = key.first, b = key.second;
        Integer scalar = c;
        while (a % 2 != 0 && b % 2 != 0) {
            scalar *= ctx.sqrt_q();
            --a;
            --b;
        }
        if (a % 2 != 0 || b % 2 != 0) throw Error("half-integral exponent does not reduce into R_w");
        CentralOrder::Vec term = o.one();
        for (int i = 0; i < a / 2; ++i) term = o.multiply(term, F);
        for (int j = 0; j < b / 2; ++j) term = o.multiply(term, V);
        for (std::size_t k = 0; k < o.rank(); ++k) total[k] += scalar * term[k];
    }
    return total;
}

bool is_zero(const CentralOrder::Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

}  // namespace

bool verify_relations(const CentralOrder& order) {
    const auto& w = order.weil_set();
    auto fv = order.multiply(order.frobenius(), order.verschiebung());
    auto q1 = order.one();
    for (auto& x : q1) x *= w.context.q;
    if (fv != q1) return false;
    if (!w.h.has_half_exponents()) return is_zero(evaluate(order, w.h));
    // Odd degree: h_{w0}(F, V)(F - eps sqrt q) and h_{w0}(F, V)(V - eps sqrt q).
    const SymmetricPolynomial half_f(std::map<SymmetricPolynomial::Key, Integer>{{{1, 0}, Integer(1)}});
    const SymmetricPolynomial half_v(std::map<SymmetricPolynomial::Key, Integer>{{{0, 1}, Integer(1)}});
    return is_zero(evaluate(order, w.h * half_f)) && is_zero(evaluate(order, w.h * half_v));
}

Integer lattice_index_in(const RationalMatrix& sub, const RationalMatrix& super) {
    const std::size_t n = sub.cols();
    if (sub.rows() != n || super.rows() != n || super.cols() != n)
        throw Error("lattice bases must be square matrices of the same size");
    auto inv = inverse(super);
    if (!inv) throw Error("lattice basis does not span the ambient space");
    if (rank(sub) != n) throw Error("sublattice basis does not span the ambient space");
    RationalMatrix change = sub * *inv;
    for (const auto& x : change.data())
        if (x.get_den() != 1) throw Error("lattice is not contained in the given overlattice");
    return abs(determinant(to_integer(change)));
}

Integer index_in(const CentralOrder& order, const RationalMatrix& overorder_basis) {
    return lattice_index_in(order.basis(), overorder_basis);
}

namespace {

void check_partition(const WeilSet& w, const std::vector<WeilSet>& parts) {
    std::vector<IntPolynomial> seen;
    for (const auto& part : parts) {
        if (!(part.context == w.context)) throw Error("partition parts must share q");
        for (const auto& c : part.classes) seen.push_back(c.poly);
    }
    std::vector<IntPolynomial> all;
    for (const auto& c : w.classes) all.push_back(c.poly);
    std::sort(seen.begin(), seen.end());
    std::sort(all.begin(), all.end());
    if (seen != all) throw Error("parts do not form a partition of w");
}

}  // namespace

RationalMatrix product_order_basis(const WeilSet& w, const std::vector<WeilSet>& parts) {
    check_partition(w, parts);
    const std::size_t n = static_cast<std::size_t>(w.P.degree());
    const RatPolynomial Pw = to_rational(w.P);
    RationalMatrix out(0, n);
    for (const auto& part : parts) {
        const RatPolynomial Pi = to_rational(part.P);
        const RatPolynomial cof = divmod(Pw, Pi).first;
        const RatPolynomial idem = reduce(cof * inverse_mod(cof, Pi), Pw);
        const CentralOrder oi = build_order(part);
        for (std::size_t row = 0; row < oi.rank(); ++row)
            out.append_row(dense(reduce(from_dense(oi.basis().row(row)) * idem, Pw), n));
    }
    return out;
}

Integer product_index(const WeilSet& w, const std::vector<WeilSet>& parts) {
    return index_in(build_order(w), product_order_basis(w, parts));
}

IntegerMatrix quotient_map(const WeilSet& w, const WeilSet& w_super) {
    if (!(w.context == w_super.context)) throw Error("quotient map needs a common q");
    for (const auto& c : w.classes)
        if (std::find(w_super.classes.begin(), w_super.classes.end(), c) == w_super.classes.end())
            throw Error("w is not contained in w'");
    const CentralOrder small = build_order(w), big = build_order(w_super);
    IntegerMatrix m(small.rank(), big.rank());
    for (std::size_t j = 0; j < big.rank(); ++j) {
        const auto c = small.coordinates(from_dense(big.basis().row(j)));
        if (!all_integral(c)) throw Error("reduction does not map R_w' into R_w");
        for (std::size_t i = 0; i < small.rank(); ++i) m(i, j) = c[i].get_num();
    }
    const SmithForm snf = smith_normal_form(m);
    if (snf.diagonal.size() != small.rank() ||
        !std::all_of(snf.diagonal.begin(), snf.diagonal.end(), [](const Integer& x) { return abs(x) == 1; }))
        throw Error("reduction map R_w' -> R_w is not surjective");
    return m;
}

WeilSet sub_weil_set(const WeilSet& w, const std::vector<IntPolynomial>& polys) {
    std::vector<WeilClass> picked;
    for (const auto& f : polys) {
        auto it = std::find_if(w.classes.begin(), w.classes.end(), [&](const WeilClass& c) { return c.poly == f; });
        if (it == w.classes.end()) throw Error("class " + to_wire(f) + " is not in w");
        picked.push_back(*it);
    }
    return make_weil_set(std::move(picked));
}

std::vector<WeilSet> connected_components(const WeilSet& w) {
    const std::size_t n = w.classes.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const WeilSet pair = make_weil_set({w.classes[i], w.classes[j]});
            const Integer idx =
                product_index(pair, {make_weil_set({w.classes[i]}), make_weil_set({w.classes[j]})});
            if (idx != 1) parent[find(i)] = find(j);
        }
    std::vector<std::vector<WeilClass>> groups;
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        auto it = std::find(roots.begin(), roots.end(), r);
        if (it == roots.end()) {
            roots.push_back(r);
            groups.push_back({w.classes[i]});
        } else {
            groups[static_cast<std::size_t>(it - roots.begin())].push_back(w.classes[i]);
        }
    }
    for (auto& g : groups)
        std::sort(g.begin(), g.end(), [](const WeilClass& a, const WeilClass& b) { return a.poly < b.poly; });
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.front().poly < b.front().poly; });
    std::vector<WeilSet> out;
    for (auto& g : groups) out.push_back(make_weil_set(std::move(g)));
    return out;
}

Integer frobenius_point_quotient_order(const CentralOrder& order) {
    const std::size_t n = order.rank();
    const Integer& p = order.weil_set().context.p;
    const auto F = order.frobenius(), V = order.verschiebung();
    IntegerMatrix gens(0, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto b = order.unit(i);
        gens.append_row(order.multiply(F, b));
        gens.append_row(order.multiply(V, b));
        auto pb = b;
        pb[i] = p;
        gens.append_row(pb);
    }
    return abs(determinant(row_lattice_basis(gens)));
}

}  // namespace weilkit

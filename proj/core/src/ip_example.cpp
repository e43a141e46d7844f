#include "weilkit/ip_example.hpp"

#include <random>

#include "weilkit/central_orders.hpp"

namespace weilkit {

namespace {

const GaussianInteger kZero{0, 0}, kOne{1, 0}, kI{0, 1};

void require_inert_prime(const Integer& p) {
    if (!is_prime(p)) throw PreconditionError("p must be prime");
    if (mod(p, Integer(4)) != 3) throw PreconditionError("p must be 3 mod 4 so that i generates an inert extension");
}

GaussianMatrix commutator(const GaussianMatrix& x, const GaussianMatrix& y) {
    const auto a = x * y, b = y * x;
    GaussianMatrix out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = a[i] - b[i];
    return out;
}

IntegerMatrix identity_lattice(std::size_t n) { return IntegerMatrix::identity(n); }

// Multiplication by a + b i on F_p^2 = F_p[i].
void put_block(IntegerMatrix& m, std::size_t row, std::size_t col, const GaussianInteger& a, const Integer& p) {
    m(row, col) = mod(a.re, p);
    m(row, col + 1) = mod(-a.im, p);
    m(row + 1, col) = mod(a.im, p);
    m(row + 1, col + 1) = mod(a.re, p);
}

}  // namespace

GaussianMatrix operator*(const GaussianMatrix& x, const GaussianMatrix& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

GaussianMatrix operator+(const GaussianMatrix& x, const GaussianMatrix& y) {
    return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]};
}

std::vector<Integer> to_coordinates(const GaussianMatrix& m) {
    std::vector<Integer> c;
    for (const auto& e : m) {
        c.push_back(e.re);
        c.push_back(e.im);
    }
    return c;
}

GaussianMatrix from_coordinates(const std::vector<Integer>& c) {
    if (c.size() != 8) throw Error("a 2x2 matrix over Z[i] has 8 coordinates");
    return {GaussianInteger{c[0], c[1]}, GaussianInteger{c[2], c[3]}, GaussianInteger{c[4], c[5]},
            GaussianInteger{c[6], c[7]}};
}

GaussianMatrix psi_scalar(const GaussianInteger& a) { return {a, kZero, kZero, a.conj()}; }
GaussianMatrix psi_frobenius(const Integer& p) { return {kZero, kOne, GaussianInteger{0, p}, kZero}; }
GaussianMatrix psi_verschiebung(const Integer& p) { return {kZero, GaussianInteger{0, -1}, GaussianInteger{p, 0}, kZero}; }

bool sec9_predicate(const Integer& p, const std::vector<Integer>& c) {
    const GaussianMatrix m = from_coordinates(c);
    const GaussianInteger diff = m[0] - m[3].conj();
    return mod(m[2].re, p) == 0 && mod(m[2].im, p) == 0 && mod(diff.re, p) == 0 && mod(diff.im, p) == 0;
}

bool OrderPresentation::contains(const std::vector<Integer>& c) const {
    return solve_in_row_lattice(hnf_basis, c).has_value();
}

PsiReport psi_verify(const Integer& p) {
    require_inert_prime(p);
    PsiReport rep;
    rep.p = p;
    const auto F = psi_frobenius(p), V = psi_verschiebung(p);
    const GaussianMatrix pI = psi_scalar(GaussianInteger{p, 0});
    rep.fv_equals_p = F * V == pI && V * F == pI;
    const auto sq = F * F + V * V;
    rep.squares_cancel = sq == psi_scalar(kZero);
    rep.frobenius_semilinear = rep.verschiebung_semilinear = true;
    for (const auto& a : {kOne, kI}) {
        if (F * psi_scalar(a) != psi_scalar(a.conj()) * F) rep.frobenius_semilinear = false;
        if (V * psi_scalar(a) != psi_scalar(a.conj()) * V) rep.verschiebung_semilinear = false;
    }

    // Left W-span of psi(V), 1, psi(F), psi(F)^2 with W replaced by Z[i].
    IntegerMatrix span(0, 0);
    for (const auto& g : {V, psi_scalar(kOne), F, F * F})
        for (const auto& a : {kOne, kI}) span.append_row(to_coordinates(psi_scalar(a) * g));
    const IntegerMatrix span_hnf = row_lattice_basis(span);
    rep.span_index = lattice_index(span_hnf, identity_lattice(8));

    // Saturate away from p: L + p^v M_2(Z[i]) has the p-part of the index.
    const long v = valuation(rep.span_index, p);
    IntegerMatrix gens = span_hnf;
    const Integer pv = ipow(p, static_cast<unsigned long>(v));
    for (std::size_t i = 0; i < 8; ++i) {
        std::vector<Integer> row(8, Integer(0));
        row[i] = pv;
        gens.append_row(row);
    }
    OrderPresentation& o = rep.order;
    o.ring = "M2(Z[i])";
    o.coordinates = {"Re a", "Im a", "Re b", "Im b", "Re c", "Im c", "Re d", "Im d"};
    o.hnf_basis = row_lattice_basis(gens);
    o.predicate_description = "p | c and a = conj(d) mod p";
    o.predicate = [p](const std::vector<Integer>& c) { return sec9_predicate(p, c); };
    o.index = lattice_index(o.hnf_basis, identity_lattice(8));
    return rep;
}

EndomorphismOrderReport endomorphism_order_sec9(const Integer& p, long probes, unsigned long seed) {
    EndomorphismOrderReport rep;
    rep.order = psi_verify(p).order;
    const IntegerMatrix& H = rep.order.hnf_basis;
    const std::size_t n = H.rows();

    rep.hnf_satisfies_predicate = true;
    for (std::size_t i = 0; i < n; ++i)
        if (!rep.order.predicate(H.row(i))) rep.hnf_satisfies_predicate = false;

    rep.closed_under_multiplication = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!rep.order.contains(to_coordinates(from_coordinates(H.row(i)) * from_coordinates(H.row(j)))))
                rep.closed_under_multiplication = false;

    std::mt19937_64 rng(seed);
    const Integer bound = p * p;
    std::uniform_int_distribution<long> dist(-bound.get_si(), bound.get_si());
    for (long t = 0; t < probes; ++t) {
        std::vector<Integer> c(8);
        for (auto& x : c) x = dist(rng);
        ++rep.probes;
        if (rep.order.predicate(c) != rep.order.contains(c)) ++rep.probe_disagreements;
    }

    // Center: z = sum lambda_k s_k with [z, s_j] = 0 for all j.
    IntegerMatrix system(8 * n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
            const auto c = to_coordinates(commutator(from_coordinates(H.row(k)), from_coordinates(H.row(j))));
            for (std::size_t t = 0; t < 8; ++t) system(j * 8 + t, k) = c[t];
        }
    const IntegerMatrix lambdas = integer_kernel(system);
    IntegerMatrix scalars(0, 0);
    bool all_scalar = true;
    for (std::size_t i = 0; i < lambdas.rows(); ++i) {
        std::vector<Integer> z(8, Integer(0));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t t = 0; t < 8; ++t) z[t] += lambdas(i, k) * H(k, t);
        const GaussianMatrix m = from_coordinates(z);
        if (!(m[1] == kZero && m[2] == kZero && m[0] == m[3])) all_scalar = false;
        scalars.append_row({m[0].re, m[0].im});
    }
    if (scalars.rows() > 0) {
        rep.center = row_lattice_basis(scalars);
        if (rep.center.rows() == 2) rep.center_index = lattice_index(rep.center, identity_lattice(2));
    }
    const IntegerMatrix z_ip = IntegerMatrix::from_rows({{Integer(1), Integer(0)}, {Integer(0), p}});
    rep.center_is_z_ip = all_scalar && rep.center == z_ip;
    return rep;
}

FiberProduct fiber_product_lattice(const ResidueLattice& l1, const ResidueLattice& l2, const Integer& p,
                                   int witt_degree) {
    if (!is_prime(p)) throw PreconditionError("p must be prime");
    if (witt_degree < 1) throw PreconditionError("Witt degree must be positive");
    const std::size_t f = l1.residue_map.rows();
    if (l2.residue_map.rows() != f) throw PreconditionError("the two residue targets have different sizes");
    if (l1.residue_map.cols() != l1.basis.cols() || l2.residue_map.cols() != l2.basis.cols())
        throw PreconditionError("residue map does not match the lattice ambient space");
    if (f % static_cast<std::size_t>(witt_degree) != 0)
        throw PreconditionError("residue target is not a vector space over the residue field");

    // Reductions in lattice coordinates.
    const IntegerMatrix red1 = l1.residue_map * l1.basis.transpose();
    const IntegerMatrix red2 = l2.residue_map * l2.basis.transpose();
    for (const auto* red : {&red1, &red2})
        if (row_echelon_mod_p(*red, p).rows() != f) throw PreconditionError("a residue map is not onto");

    const std::size_t m1 = red1.cols(), m2 = red2.cols(), m = m1 + m2;
    IntegerMatrix combined(f, m);
    for (std::size_t i = 0; i < f; ++i) {
        for (std::size_t j = 0; j < m1; ++j) combined(i, j) = mod(red1(i, j), p);
        for (std::size_t j = 0; j < m2; ++j) combined(i, m1 + j) = mod(-red2(i, j), p);
    }
    const LocalKernel ker = kernel_mod_prime_power(combined, p, 1);
    IntegerMatrix gens(0, 0);
    for (std::size_t c = 0; c < ker.free_part.cols(); ++c) gens.append_row(ker.free_part.col(c));
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Integer> row(m, Integer(0));
        row[i] = p;
        gens.append_row(row);
    }
    const IntegerMatrix sub = row_lattice_basis(gens);

    FiberProduct out;
    out.index = lattice_index(sub, IntegerMatrix::identity(m));
    const long v = valuation(out.index, p);
    if (v % witt_degree != 0) throw Error("fiber product colength is not a multiple of the Witt degree");
    out.witt_colength = v / witt_degree;

    const std::size_t n1 = l1.basis.cols(), n2 = l2.basis.cols();
    IntegerMatrix block(m, n1 + n2);
    for (std::size_t i = 0; i < m1; ++i)
        for (std::size_t j = 0; j < n1; ++j) block(i, j) = l1.basis(i, j);
    for (std::size_t i = 0; i < m2; ++i)
        for (std::size_t j = 0; j < n2; ++j) block(m1 + i, n1 + j) = l2.basis(i, j);
    out.basis = row_lattice_basis(sub * block);
    return out;
}

ResidueLattice sec9_lambda1(const Integer& p) {
    ResidueLattice l;
    l.basis = IntegerMatrix::identity(4);
    l.basis(2, 2) = p;
    l.basis(3, 3) = p;
    l.residue_map = IntegerMatrix::from_rows({{Integer(1), Integer(0), Integer(0), Integer(0)},
                                              {Integer(0), Integer(1), Integer(0), Integer(0)}});
    return l;
}

ResidueLattice sec9_lambda2(const Integer&) {
    ResidueLattice l;
    l.basis = IntegerMatrix::identity(4);
    l.residue_map = IntegerMatrix::from_rows({{Integer(0), Integer(0), Integer(1), Integer(0)},
                                              {Integer(0), Integer(0), Integer(0), Integer(-1)}});
    return l;
}

LatticeModP sec9_residue_action(const Integer& p) {
    const auto order = psi_verify(p).order;
    LatticeModP action;
    action.p = p;
    action.dimension = 4;
    for (std::size_t i = 0; i < order.hnf_basis.rows(); ++i) {
        const GaussianMatrix m = from_coordinates(order.hnf_basis.row(i));
        IntegerMatrix g(4, 4);
        put_block(g, 0, 0, m[0], p);
        put_block(g, 0, 2, m[1], p);
        put_block(g, 2, 0, m[2], p);
        put_block(g, 2, 2, m[3], p);
        action.generators.push_back(std::move(g));
    }
    return action;
}

Sec9Example example_sec9(const Integer& p) {
    require_inert_prime(p);
    Sec9Example ex;
    ex.p = p;
    const GlobalContext ctx = GlobalContext::from_pr(p, 2);
    const auto v = validate_weil(IntPolynomial({p * p, Integer(0), Integer(1)}), ctx);
    if (!v.accepted()) throw Error("x^2 + p^2 was not accepted as a Weil polynomial");
    ex.record = honda_tate_record(*v.weil_class);

    // Z[i] = Z + Z x/p inside Q[x]/(x^2 + p^2).
    const auto order = build_order(make_weil_set({*v.weil_class}));
    const RationalMatrix zi = RationalMatrix::from_rows({{Rational(1), Rational(0)}, {Rational(0), Rational(1, p)}});
    ex.r_pi_index = index_in(order, zi);

    ex.psi = psi_verify(p);
    ex.stable = enumerate_stable_lattices(sec9_residue_action(p));
    // p Lambda_2 <= Lambda <= Lambda_2 up to homothety; Lambda_2 and p Lambda_2 are one class.
    ex.lattice_classes = 1 + ex.stable.proper.size();
    ex.labelings.push_back({"T_p(B) = Lambda_2, T_p(B^(p)) = Lambda_1",
                            fiber_product_lattice(sec9_lambda1(p), sec9_lambda2(p), p, 2)});
    ex.labelings.push_back({"T_p(B) = Lambda_1, T_p(B^(p)) = Lambda_2",
                            fiber_product_lattice(sec9_lambda2(p), sec9_lambda1(p), p, 2)});
    ex.s_pi = endomorphism_order_sec9(p);
    return ex;
}

}  // namespace weilkit

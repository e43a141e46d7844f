#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "weilkit/central_orders.hpp"
#include "weilkit/dieudonne.hpp"
#include "weilkit/ip_example.hpp"

using namespace weilkit;
using testutil::P;

namespace {

GlobalContext ctx(long q) { return GlobalContext::from_q(Integer(q)); }

WeilSet wset(std::vector<std::initializer_list<long>> polys, long q) {
    std::vector<WeilClass> cs;
    for (auto& p : polys) {
        auto v = validate_weil(P(p), ctx(q));
        REQUIRE(v.accepted());
        cs.push_back(*v.weil_class);
    }
    return make_weil_set(cs);
}

IntegerMatrix M(std::vector<std::vector<long>> rows) {
    std::vector<std::vector<Integer>> r;
    for (auto& row : rows) {
        r.emplace_back();
        for (long x : row) r.back().emplace_back(x);
    }
    return IntegerMatrix::from_rows(r);
}

}  // namespace

TEST_CASE("build_dieudonne examples") {
    SUBCASE("x^2 + 9 over F_9") {
        auto alg = build_dieudonne(wset({{9, 0, 1}}, 9), 3);
        CHECK(alg.N() == 2);
        CHECK(alg.witt_rank() == 4);
        CHECK(alg.zp_rank() == 8);
        CHECK(alg.witt().context().modulus() == 27);
        // F^2 + V^2 = 0 rewrites F_2 = -F_-2.
        CHECK(alg.top_rewrite() == std::vector<Integer>{Integer(26), Integer(0), Integer(0), Integer(0)});
        CHECK(alg.zp_basis_label(0) == "F_-2");
        CHECK(alg.zp_basis_label(7) == "t^1*F_1");
        const auto rep = check_structure(alg);
        CHECK(rep.triples_checked == 512);
        CHECK(rep.ok());
    }
    SUBCASE("both rational classes over F_9") {
        auto alg = build_dieudonne(wset({{-3, 1}, {3, 1}}, 9), 3);
        CHECK(alg.N() == 2);
        CHECK(alg.zp_rank() == 8);
        CHECK(check_structure(alg).ok());
    }
    SUBCASE("odd degree") {
        auto alg = build_dieudonne(wset({{9, 0, 1}, {-3, 1}}, 9), 3);
        CHECK(alg.N() == 3);
        CHECK(alg.zp_rank() == 12);
        CHECK(check_structure(alg).ok());
        auto single = build_dieudonne(wset({{3, 1}}, 9), 4);
        CHECK(single.N() == 1);
        CHECK(check_structure(single).ok());
    }
    SUBCASE("prime field and r = 3") {
        CHECK(check_structure(build_dieudonne(wset({{3, 1, 1}, {3, 0, 1}}, 3), 4)).ok());
        CHECK(check_structure(build_dieudonne(wset({{-3, 0, 1}}, 3), 4)).ok());
        CHECK(check_structure(build_dieudonne(wset({{8, 1, 1}}, 8), 3)).ok());
    }
    SUBCASE("F V = p and multiplication by Witt scalars") {
        auto alg = build_dieudonne(wset({{9, -1, 1}}, 9), 3);
        const auto& W = alg.witt();
        const auto t = alg.scalar(W.t());
        CHECK(alg.multiply(alg.frobenius(), t) == alg.multiply(alg.scalar(W.frobenius(W.t())), alg.frobenius()));
        CHECK(alg.multiply(alg.verschiebung(), t) ==
              alg.multiply(alg.scalar(W.frobenius_power(W.t(), -1)), alg.verschiebung()));
    }
    CHECK_THROWS_AS(build_dieudonne(wset({{9, 0, 1}}, 9), 1), PreconditionError);
}

TEST_CASE("structure suite over enumerated classes") {
    for (long q : {2L, 3L, 4L, 9L}) {
        long bad = 0;
        for (const auto& c : enumerate_weil(ctx(q), 2)) {
            const auto alg = build_dieudonne(make_weil_set({c}), 3);
            if (!check_structure(alg).ok()) ++bad;
        }
        CAPTURE(q);
        CHECK(bad == 0);
    }
}

TEST_CASE("verify_center") {
    for (auto [w, k] : {std::pair{wset({{9, 0, 1}}, 9), 4L}, std::pair{wset({{9, -1, 1}}, 9), 4L},
                        std::pair{wset({{-3, 1}, {3, 1}}, 9), 3L}}) {
        const auto cmp = verify_center_at_two_precisions(w, k);
        CAPTURE(to_wire(w.P));
        CHECK(cmp.low.center_rank == 2);
        CHECK(cmp.high.center_rank == 2);
        CHECK(cmp.low.passed());
        CHECK(cmp.high.passed());
        CHECK(cmp.truncations_agree);
        CHECK(cmp.common_precision >= 1);
    }
    SUBCASE("other shapes") {
        for (const auto& w : {wset({{9, 0, 1}, {-3, 1}}, 9), wset({{3, 1, 1}, {3, 0, 1}}, 3), wset({{-3, 0, 1}}, 3)}) {
            const auto rep = verify_center(build_dieudonne(w, 4));
            CAPTURE(to_wire(w.P));
            CHECK(rep.center_rank == static_cast<std::size_t>(w.degree));
            CHECK(rep.passed());
        }
    }
}

TEST_CASE("ordinary_matrix_check") {
    SUBCASE("x^2 - x + 9") {
        const auto alg = build_dieudonne(wset({{9, -1, 1}}, 9), 4);
        const auto chk = ordinary_matrix_check(alg);
        CHECK(chk.verdict == OrdinaryVerdict::verified);
        REQUIRE(chk.idempotents.size() == 2);
        CHECK(chk.corner_ranks == std::vector<std::size_t>{2, 2});
        CHECK(alg.add(chk.idempotents[0], chk.idempotents[1]) == alg.one());
        CHECK(alg.is_zero(alg.multiply(chk.idempotents[0], chk.idempotents[1])));
    }
    SUBCASE("other ordinary sets") {
        for (const auto& w : {wset({{9, -1, 1}, {9, 1, 1}}, 9), wset({{3, 1, 1}}, 3), wset({{4, 1, 1}}, 4),
                              wset({{8, 1, 1}}, 8)}) {
            CAPTURE(to_wire(w.P));
            const auto chk = ordinary_matrix_check(build_dieudonne(w, 3));
            CHECK(chk.verdict == OrdinaryVerdict::verified);
            CHECK(chk.idempotents.size() == static_cast<std::size_t>(w.context.r));
        }
    }
    CHECK_THROWS_AS(ordinary_matrix_check(build_dieudonne(wset({{9, 0, 1}}, 9), 3)), PreconditionError);
    CHECK_THROWS_AS(ordinary_matrix_check(build_dieudonne(wset({{-3, 1}, {3, 1}}, 9), 3)), PreconditionError);
}

TEST_CASE("enumerate_stable_lattices") {
    SUBCASE("zero action on F_p^2 has p + 3 subspaces") {
        for (long p : {2L, 3L, 5L, 7L}) {
            LatticeModP a{Integer(p), 2, {IntegerMatrix(2, 2)}};
            const auto s = enumerate_stable_lattices(a);
            CHECK(s.all.size() == static_cast<std::size_t>(p + 3));
            CHECK(s.proper.size() == static_cast<std::size_t>(p + 1));
        }
    }
    SUBCASE("the full matrix algebra is simple") {
        LatticeModP a{Integer(3), 2, {M({{1, 0}, {0, 0}}), M({{0, 1}, {0, 0}}), M({{0, 0}, {1, 0}})}};
        const auto s = enumerate_stable_lattices(a);
        CHECK(s.all.size() == 2);
        CHECK(s.proper.empty());
    }
    SUBCASE("residue action of the order") {
        for (long p : {3L, 7L}) {
            const auto action = sec9_residue_action(Integer(p));
            const auto s = enumerate_stable_lattices(action);
            REQUIRE(s.proper.size() == 1);
            // The image of Lambda_1: first coordinate pair.
            CHECK(s.proper[0] == M({{1, 0, 0, 0}, {0, 1, 0, 0}}));
        }
    }
    SUBCASE("independent of generator order and basis") {
        const Integer p(3);
        auto action = sec9_residue_action(p);
        const auto base = enumerate_stable_lattices(action);
        std::mt19937 rng(11);
        std::uniform_int_distribution<long> dist(0, 2);
        for (int trial = 0; trial < 5; ++trial) {
            IntegerMatrix g(4, 4), ginv;
            for (;;) {
                for (std::size_t i = 0; i < 4; ++i)
                    for (std::size_t j = 0; j < 4; ++j) g(i, j) = dist(rng);
                if (row_echelon_mod_p(g, p).rows() == 4) break;
            }
            // Inverse mod p via the rational inverse scaled by the determinant.
            const Integer det = determinant(g);
            const auto inv = *inverse(to_rational(g));
            const Integer dinv = inverse_mod(det, p);
            ginv = IntegerMatrix(4, 4);
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) {
                    const Rational x = inv(i, j) * det;
                    ginv(i, j) = mod(x.get_num() * dinv, p);
                }
            LatticeModP conj{p, 4, {}};
            for (auto it = action.generators.rbegin(); it != action.generators.rend(); ++it)
                conj.generators.push_back(ginv * (*it) * g);
            const auto s = enumerate_stable_lattices(conj);
            CHECK(s.all.size() == base.all.size());
            REQUIRE(s.proper.size() == 1);
            // g maps the new stable subspace onto the old one.
            IntegerMatrix image = (g * s.proper[0].transpose()).transpose();
            CHECK(row_echelon_mod_p(image, p) == base.proper[0]);
        }
    }
    CHECK_THROWS_AS(enumerate_stable_lattices(LatticeModP{Integer(2), 11, {}}), PreconditionError);
}

TEST_CASE("psi_verify") {
    const auto r3 = psi_verify(Integer(3));
    CHECK(r3.relations_hold());
    CHECK(r3.order.index == 81);
    // Away from p the span misses a 2-part: det(a, d) = -2ip, det(b, c / p) = -2.
    CHECK(r3.span_index == 16 * 81);
    const auto r7 = psi_verify(Integer(7));
    CHECK(r7.relations_hold());
    CHECK(r7.order.index == 2401);
    CHECK(r7.span_index == 16 * 2401);
    CHECK_THROWS_AS(psi_verify(Integer(5)), PreconditionError);
    CHECK_THROWS_AS(psi_verify(Integer(15)), PreconditionError);
    // psi(u V + x + v F + y F^2) is in the order.
    const Integer p(3);
    const GaussianInteger u{2, -1}, x{1, 4}, v{-3, 2}, y{5, 1};
    const auto m = psi_scalar(u) * psi_verschiebung(p) + psi_scalar(x) + psi_scalar(v) * psi_frobenius(p) +
                   psi_scalar(y) * psi_frobenius(p) * psi_frobenius(p);
    CHECK(r3.order.contains(to_coordinates(m)));
    CHECK(sec9_predicate(p, to_coordinates(m)));
}

TEST_CASE("fiber_product_lattice") {
    const Integer p(3);
    const auto fp = fiber_product_lattice(sec9_lambda1(p), sec9_lambda2(p), p, 2);
    CHECK(fp.witt_colength == 1);
    CHECK(fp.index == 9);
    CHECK(fp.basis.rows() == 8);
    // Zero twist: the diagonal congruence on o_K (+) o_K.
    ResidueLattice ok{IntegerMatrix::identity(2), IntegerMatrix::identity(2)};
    const auto diag = fiber_product_lattice(ok, ok, p, 2);
    CHECK(diag.witt_colength == 1);
    CHECK(diag.index == 9);
    // Mismatched residue fields.
    ResidueLattice z{IntegerMatrix::identity(1), IntegerMatrix::identity(1)};
    CHECK_THROWS_AS(fiber_product_lattice(ok, z, p, 2), PreconditionError);
    // A reduction map that is not onto.
    ResidueLattice bad{IntegerMatrix::identity(2), M({{3, 0}, {0, 1}})};
    CHECK_THROWS_AS(fiber_product_lattice(bad, ok, p, 2), PreconditionError);
}

TEST_CASE("endomorphism_order_sec9") {
    const auto s3 = endomorphism_order_sec9(Integer(3));
    CHECK(s3.order.hnf_basis.rows() == 8);
    CHECK(s3.order.index == 81);
    CHECK(s3.hnf_satisfies_predicate);
    CHECK(s3.closed_under_multiplication);
    CHECK(s3.probes == 1000);
    CHECK(s3.probe_disagreements == 0);
    CHECK(s3.center_is_z_ip);
    CHECK(s3.center_index == 3);
    const auto s7 = endomorphism_order_sec9(Integer(7));
    CHECK(s7.order.index == 2401);
    CHECK(s7.center_is_z_ip);
    CHECK(s7.probe_disagreements == 0);
    // Closure probe on random predicate-satisfying matrices.
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> dist(-9, 9);
    const Integer p(3);
    for (int t = 0; t < 200; ++t) {
        auto sample = [&]() {
            std::vector<Integer> c(8);
            for (auto& x : c) x = dist(rng);
            c[4] *= 3;
            c[5] *= 3;
            c[0] = c[6] + 3 * c[0];
            c[1] = -c[7] + 3 * c[1];
            return from_coordinates(c);
        };
        const auto a = sample(), b = sample();
        REQUIRE(sec9_predicate(p, to_coordinates(a)));
        CHECK(sec9_predicate(p, to_coordinates(a * b)));
    }
    CHECK_THROWS_AS(endomorphism_order_sec9(Integer(5)), PreconditionError);
}

TEST_CASE("example_sec9") {
    const auto ex = example_sec9(Integer(3));
    CHECK(ex.record.s == 1);
    REQUIRE(ex.record.places.size() == 1);
    CHECK(ex.record.places[0].f == 2);
    CHECK(ex.record.places[0].invariant == 0);
    CHECK(ex.r_pi_index == 3);
    CHECK(ex.psi.relations_hold());
    CHECK(ex.lattice_classes == 2);
    CHECK(ex.psi.order.index == 81);
    CHECK(ex.s_pi.order.index == 81);
    CHECK(ex.s_pi.center_is_z_ip);
    REQUIRE(ex.labelings.size() == 2);
    for (const auto& l : ex.labelings) {
        CHECK(l.fiber_product.witt_colength == 1);
        CHECK(l.fiber_product.index == 9);
    }
}

#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "weilkit/central_orders.hpp"

using namespace weilkit;
using testutil::P;
using testutil::Q;

namespace {

GlobalContext ctx(long q) { return GlobalContext::from_q(Integer(q)); }

WeilClass weil(std::initializer_list<long> c, long q) {
    auto v = validate_weil(P(c), ctx(q));
    REQUIRE(v.accepted());
    return *v.weil_class;
}

WeilSet wset(std::vector<std::initializer_list<long>> polys, long q) {
    std::vector<WeilClass> cs;
    for (auto& p : polys) cs.push_back(weil(p, q));
    return make_weil_set(cs);
}

CentralOrder::Vec V(std::initializer_list<long> c) {
    CentralOrder::Vec v;
    for (long x : c) v.emplace_back(x);
    return v;
}

// Table associativity on all basis triples and agreement with Q[x]/(P_w).
void check_table(const CentralOrder& o) {
    const std::size_t n = o.rank();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto ij = o.multiply(o.unit(i), o.unit(j));
            CHECK(ij == o.multiply(o.unit(j), o.unit(i)));
            for (std::size_t k = 0; k < n; ++k)
                CHECK(o.multiply(ij, o.unit(k)) == o.multiply(o.unit(i), o.multiply(o.unit(j), o.unit(k))));
        }
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> dist(-5, 5);
    const RatPolynomial modulus = to_rational(o.weil_set().P);
    for (int trial = 0; trial < 10; ++trial) {
        CentralOrder::Vec a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = dist(rng);
            b[i] = dist(rng);
        }
        const RatPolynomial prod = divmod(o.to_polynomial(a) * o.to_polynomial(b), modulus).second;
        CHECK(o.to_polynomial(o.multiply(a, b)) == prod);
    }
}

}  // namespace

TEST_CASE("build_order examples") {
    SUBCASE("x^2 + 9 over F_9") {
        auto o = build_order(wset({{9, 0, 1}}, 9));
        CHECK(o.rank() == 2);
        CHECK(o.basis_labels() == std::vector<std::string>{"F", "1"});
        CHECK(o.frobenius() == V({1, 0}));
        CHECK(o.verschiebung() == V({-1, 0}));
        CHECK(o.multiply(o.frobenius(), o.frobenius()) == V({0, -9}));
        CHECK(verify_relations(o));
        check_table(o);
    }
    SUBCASE("x^2 + 3 and x^2 + x + 3 over F_3") {
        auto o = build_order(wset({{3, 0, 1}, {3, 1, 1}}, 3));
        CHECK(o.rank() == 4);
        CHECK(o.basis_labels() == std::vector<std::string>{"F^2", "F", "1", "V"});
        CHECK(verify_relations(o));
        check_table(o);
    }
    SUBCASE("both rational classes over F_9") {
        auto o = build_order(wset({{-3, 1}, {3, 1}}, 9));
        CHECK(o.rank() == 2);
        CHECK(o.basis_labels() == std::vector<std::string>{"F", "1"});
        CHECK(verify_relations(o));
        check_table(o);
    }
    SUBCASE("odd degree: one rational class") {
        auto o = build_order(wset({{9, 0, 1}, {-3, 1}}, 9));
        CHECK(o.rank() == 3);
        CHECK(o.basis_labels() == std::vector<std::string>{"F", "1", "V"});
        CHECK(verify_relations(o));
        check_table(o);
        auto single = build_order(wset({{3, 1}}, 9));
        CHECK(single.rank() == 1);
        CHECK(single.basis_labels() == std::vector<std::string>{"1"});
        CHECK(verify_relations(single));
    }
    SUBCASE("larger sets") {
        auto o = build_order(wset({{9, -1, 1}, {9, 0, 1}, {81, 9, 1, 1, 1}, {-3, 1}}, 9));
        CHECK(o.rank() == 9);
        CHECK(verify_relations(o));
        check_table(o);
    }
}

TEST_CASE("index_in") {
    auto o = build_order(wset({{9, 0, 1}}, 9));
    // Z[i] with i = x/3.
    RationalMatrix zi = RationalMatrix::from_rows({{Q(1), Q(0)}, {Q(0), Q(1, 3)}});
    CHECK(index_in(o, zi) == 3);
    CHECK(index_in(o, o.basis()) == 1);
    RationalMatrix z2x = RationalMatrix::from_rows({{Q(1), Q(0)}, {Q(0), Q(2)}});
    CHECK(lattice_index_in(z2x, RationalMatrix::identity(2)) == 2);
    CHECK_THROWS_AS(lattice_index_in(RationalMatrix::identity(2), z2x), Error);
    RationalMatrix degenerate = RationalMatrix::from_rows({{Q(1), Q(0)}, {Q(2), Q(0)}});
    CHECK_THROWS_AS(index_in(o, degenerate), Error);
}

TEST_CASE("quotient maps") {
    const auto big = wset({{3, 0, 1}, {3, 1, 1}}, 3);
    const auto a = wset({{3, 0, 1}}, 3);
    const auto b = wset({{3, 1, 1}}, 3);
    const auto ra = quotient_map(a, big);
    CHECK(ra.rows() == 2);
    CHECK(ra.cols() == 4);
    CHECK(quotient_map(b, big).cols() == 4);
    CHECK(quotient_map(big, big) == IntegerMatrix::identity(4));
    // Composition r_{a,big} r_{big,bigger} = r_{a,bigger}.
    const auto bigger = wset({{3, 0, 1}, {3, 1, 1}, {3, -3, 1}}, 3);
    CHECK(quotient_map(a, big) * quotient_map(big, bigger) == quotient_map(a, bigger));
    CHECK_THROWS_AS(quotient_map(bigger, big), Error);
    // F maps to F.
    const auto bo = build_order(big), ao = build_order(a);
    CHECK(ra.apply(bo.frobenius()) == ao.frobenius());
    CHECK(ra.apply(bo.verschiebung()) == ao.verschiebung());
}

TEST_CASE("connected components") {
    SUBCASE("the h + 1 pair splits") {
        const auto w = wset({{3, 0, 1}, {3, 1, 1}}, 3);
        const auto comps = connected_components(w);
        REQUIRE(comps.size() == 2);
        CHECK(product_index(w, comps) == 1);
    }
    SUBCASE("control pair stays connected") {
        const auto w = wset({{3, 0, 1}, {3, -3, 1}}, 3);
        const auto comps = connected_components(w);
        REQUIRE(comps.size() == 1);
        CHECK(product_index(w, {sub_weil_set(w, {P({3, 0, 1})}), sub_weil_set(w, {P({3, -3, 1})})}) == 9);
    }
    SUBCASE("singleton") {
        CHECK(connected_components(wset({{9, 0, 1}}, 9)).size() == 1);
    }
    SUBCASE("mixed set") {
        const auto w = wset({{3, 0, 1}, {3, 1, 1}, {3, -3, 1}}, 3);
        // x^2+x+3 is linked to x^2-3x+3, which is linked to x^2+3.
        const auto comps = connected_components(w);
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].classes.size() == 3);
        CHECK(comps[0].classes[0].poly == P({3, -3, 1}));
        CHECK(product_index(w, {sub_weil_set(w, {P({3, 1, 1})}), sub_weil_set(w, {P({3, 0, 1})}),
                                sub_weil_set(w, {P({3, -3, 1})})}) > 1);
    }
}

TEST_CASE("the point (F, V, p) on Spec R_w") {
    CHECK(frobenius_point_quotient_order(build_order(wset({{9, -1, 1}}, 9))) == 1);
    CHECK(frobenius_point_quotient_order(build_order(wset({{9, -1, 1}, {9, 1, 1}}, 9))) == 1);
    CHECK(frobenius_point_quotient_order(build_order(wset({{9, 0, 1}}, 9))) == 3);
    CHECK(frobenius_point_quotient_order(build_order(wset({{9, 0, 1}, {9, -1, 1}}, 9))) == 3);
    CHECK(frobenius_point_quotient_order(build_order(wset({{-3, 0, 1}}, 3))) == 3);
    CHECK(frobenius_point_quotient_order(build_order(wset({{32, -2, 1}}, 32))) == 2);
}

TEST_CASE("orders of enumerated classes and pairs") {
    for (long q : {2L, 3L, 4L, 9L}) {
        const auto classes = enumerate_weil(ctx(q), 4);
        long bad = 0;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            const auto o = build_order(make_weil_set({classes[i]}));
            if (!verify_relations(o)) ++bad;
            const bool ordinary = slope_type(classes[i]).type == SlopeType::ordinary;
            if ((frobenius_point_quotient_order(o) == 1) != ordinary) ++bad;
            if (i + 1 < classes.size() && i % 3 == 0) {
                const auto pair = build_order(make_weil_set({classes[i], classes[i + 1]}));
                if (!verify_relations(pair)) ++bad;
            }
        }
        CAPTURE(q);
        CHECK(bad == 0);
    }
}

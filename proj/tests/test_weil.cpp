#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "test_util.hpp"
#include "weilkit/integer_factor.hpp"
#include "weilkit/sturm.hpp"
#include "weilkit/weil.hpp"

using namespace weilkit;
using testutil::P;

namespace {

GlobalContext ctx(long q) { return GlobalContext::from_q(Integer(q)); }

// Independent oracle: every monic integer polynomial of degree <= 4 inside the
// coefficient box, kept when irreducible with all roots of modulus sqrt(q).
std::set<std::string> brute_force_weil(long q) {
    std::set<std::string> out;
    const double s = 2 * std::sqrt(static_cast<double>(q));
    auto box = [&](int n, int i) { return static_cast<long>(std::ceil(std::tgamma(n + 1) / (std::tgamma(i + 1) * std::tgamma(n - i + 1)) * std::pow(s, i))); };
    const Integer Q(q);
    const RealPoint lo = RealPoint::quadratic(0, -2, Q), hi = RealPoint::quadratic(0, 2, Q);
    // Degree 1: x - c with c^2 = q.
    for (long c = -box(1, 1); c <= box(1, 1); ++c)
        if (c * c == q) out.insert(to_wire(P({-c, 1})));
    // Degree 2: x^2 + a x + b.
    for (long a = -box(2, 1); a <= box(2, 1); ++a)
        for (long b = -box(2, 2); b <= box(2, 2); ++b) {
            IntPolynomial f = P({b, a, 1});
            if (!is_irreducible_over_q(f)) continue;
            bool real_class = a == 0 && b == -q;
            // Non-real roots of modulus sqrt(q): b = q and a^2 < 4q.
            bool nonreal = b == q && a * a < 4 * q;
            if (real_class || nonreal) out.insert(to_wire(f));
        }
    // Degree 4: x^4 + a x^3 + b x^2 + c x + e.
    const long ba = box(4, 1), bb = box(4, 2), bc = box(4, 3), be = box(4, 4);
    for (long a = -ba; a <= ba; ++a)
        for (long c = -bc; c <= bc; ++c) {
            if (c != q * a) continue;
            for (long e = -be; e <= be; ++e) {
                if (e != q * q) continue;
                for (long b = -bb; b <= bb; ++b) {
                    // x^-2 f = (x + q/x)^2 + a (x + q/x) + (b - 2q)
                    IntPolynomial tr = P({b - 2 * q, a, 1});
                    if (!is_squarefree(tr) || sign_at(tr, hi) == 0) continue;
                    if (SturmSequence(tr).count(lo, hi) != 2) continue;
                    IntPolynomial f = P({e, c, b, a, 1});
                    if (is_irreducible_over_q(f)) out.insert(to_wire(f));
                }
            }
        }
    return out;
}

}  // namespace

TEST_CASE("validate_weil examples") {
    auto v = validate_weil(P({32, -2, 1}), ctx(32));
    REQUIRE(v.accepted());
    CHECK_FALSE(v.weil_class->is_real);
    auto w = validate_weil(P({9, 0, 1}), ctx(9));
    REQUIRE(w.accepted());
    CHECK(w.weil_class->half_degree() == 1);
    auto x = validate_weil(P({2, -5, 1}), ctx(2));
    CHECK_FALSE(x.accepted());
    CHECK(x.rejection == Rejection::real_root_outside_bound);
    CHECK(validate_weil(P({2, -3, 1}), ctx(2)).rejection == Rejection::reducible);
    CHECK(validate_weil(P({5, 1, 1}), ctx(2)).rejection == Rejection::functional_equation_fails);
    CHECK(validate_weil(P({-3, 1}), ctx(2)).rejection == Rejection::real_but_not_sqrt_q);
    CHECK(validate_weil(P({-3, 1}), ctx(9)).accepted());
    CHECK(validate_weil(P({-3, 0, 1}), ctx(3)).weil_class->is_real);
    CHECK(validate_weil(P({-9, 0, 1}), ctx(9)).rejection == Rejection::reducible);
    // Complex roots off the circle: x^4 + 4 x^2 + 4 is reducible, x^4 + 5x^2 + 4... use a non-real Q root.
    CHECK(validate_weil(P({4, 0, 5, 0, 1}), ctx(2)).rejection.has_value());
    CHECK_THROWS_AS(validate_weil(P({9, 0, 2}), ctx(9)), PreconditionError);
    CHECK(to_string(Rejection::functional_equation_fails) == "functional-equation-fails");
}

TEST_CASE("trace polynomial round trip") {
    const Integer q(32);
    IntPolynomial f = P({32, -2, 1});
    CHECK(trace_polynomial(f, q) == P({-2, 1}));
    CHECK(from_trace_polynomial(P({-2, 1}), q) == f);
    IntPolynomial g = P({3, 1, 1});
    CHECK(from_trace_polynomial(trace_polynomial(from_trace_polynomial(g, Integer(5)), Integer(5)), Integer(5)) ==
          from_trace_polynomial(g, Integer(5)));
    CHECK_THROWS_AS(trace_polynomial(P({1, 1, 1}), Integer(2)), Error);
}

TEST_CASE("symmetric polynomial examples") {
    CHECK(symmetric_polynomial(*validate_weil(P({9, 0, 1}), ctx(9)).weil_class).to_string() == "F + V");
    for (long t = -5; t <= 5; ++t) {
        auto c = validate_weil(P({32, -t, 1}), ctx(32));
        REQUIRE(c.accepted());
        SymmetricPolynomial h = symmetric_polynomial(*c.weil_class);
        CHECK(h.coeff(2, 0) == 1);
        CHECK(h.coeff(0, 2) == 1);
        CHECK(h.coeff(0, 0) == -t);
    }
    auto r = symmetric_polynomial(*validate_weil(P({-4, 1}), ctx(16)).weil_class);
    CHECK(r.to_string() == "F^(1/2) - V^(1/2)");
    CHECK(r.has_half_exponents());
    CHECK(symmetric_polynomial(*validate_weil(P({4, 1}), ctx(16)).weil_class).to_string() == "F^(1/2) + V^(1/2)");
    CHECK(symmetric_polynomial(*validate_weil(P({-3, 0, 1}), ctx(3)).weil_class).to_string() == "F - V");
}

TEST_CASE("weil sets multiply symmetric polynomials") {
    auto a = *validate_weil(P({3, 0, 1}), ctx(3)).weil_class;
    auto b = *validate_weil(P({3, 1, 1}), ctx(3)).weil_class;
    auto c = *validate_weil(P({-3, 0, 1}), ctx(3)).weil_class;
    WeilSet w = make_weil_set({a, b, c});
    CHECK(w.degree == 6);
    CHECK(w.P == a.poly * b.poly * c.poly);
    CHECK(w.h == symmetric_polynomial(a) * symmetric_polynomial(b) * symmetric_polynomial(c));
    CHECK(w.h.substitute(Integer(3), w.degree) == w.P);
    CHECK_THROWS_AS(make_weil_set({a, a}), Error);
    CHECK_THROWS_AS(make_weil_set({a, *validate_weil(P({9, 0, 1}), ctx(9)).weil_class}), Error);
    // Rational pair for even r.
    auto e = enumerate_weil(ctx(16), 2);
    std::vector<WeilClass> rational;
    for (const auto& x : e)
        if (x.is_real) rational.push_back(x);
    REQUIRE(rational.size() == 2);
    WeilSet pair = make_weil_set(rational);
    CHECK(pair.P == P({-16, 0, 1}));
    CHECK(pair.h.substitute(Integer(16), 2) == pair.P);
}

TEST_CASE("enumeration examples") {
    auto q2 = enumerate_weil(ctx(2), 2);
    int nonreal = 0;
    for (const auto& c : q2)
        if (!c.is_real) ++nonreal;
    CHECK(nonreal == 5);
    CHECK(q2.size() == 6);
    auto q4 = enumerate_weil(ctx(4), 2);
    auto has = [](const std::vector<WeilClass>& v, const IntPolynomial& f) {
        return std::any_of(v.begin(), v.end(), [&](const WeilClass& c) { return c.poly == f; });
    };
    CHECK(has(q4, P({-2, 1})));
    CHECK(has(q4, P({2, 1})));
    auto q3 = enumerate_weil(ctx(3), 2);
    CHECK(has(q3, P({3, 0, 1})));
    CHECK(has(q3, P({3, 1, 1})));
    CHECK_THROWS_AS(enumerate_weil(ctx(2), 3), Error);
    CHECK_THROWS_AS(enumerate_weil(ctx(2), 10), Error);
    CHECK(std::is_sorted(q3.begin(), q3.end(), [](const WeilClass& a, const WeilClass& b) { return a.poly < b.poly; }));
}

TEST_CASE("enumeration matches the brute-force oracle for q = 2") {
    std::set<std::string> got;
    for (const auto& c : enumerate_weil(ctx(2), 4)) got.insert(to_wire(c.poly));
    CHECK(got == brute_force_weil(2));
}

TEST_CASE("enumeration matches the brute-force oracle for q = 3 and 4") {
    for (long q : {3L, 4L}) {
        std::set<std::string> got;
        for (const auto& c : enumerate_weil(ctx(q), 4)) got.insert(to_wire(c.poly));
        CHECK(got == brute_force_weil(q));
    }
}

TEST_CASE("slope types") {
    CHECK(slope_type(*validate_weil(P({9, -1, 1}), ctx(9)).weil_class).type == SlopeType::ordinary);
    CHECK(slope_type(*validate_weil(P({9, 0, 1}), ctx(9)).weil_class).type == SlopeType::supersingular);
    auto m = slope_type(*validate_weil(P({32, -2, 1}), ctx(32)).weil_class);
    CHECK(m.type == SlopeType::mixed);
    CHECK(m.slopes == std::vector<Rational>{Rational(1), Rational(4)});
    CHECK(slope_type(*validate_weil(P({-3, 0, 1}), ctx(3)).weil_class).type == SlopeType::supersingular);
}

TEST_CASE("enumerated classes: validation, symmetry and ordinarity") {
    for (long q : {2L, 3L, 4L, 5L, 9L}) {
        CAPTURE(q);
        auto all = enumerate_weil(ctx(q), 6);
        std::set<std::string> seen;
        for (const auto& c : all) {
            CAPTURE(to_wire(c.poly));
            CHECK(seen.insert(to_wire(c.poly)).second);
            auto v = validate_weil(c.poly, c.context);
            REQUIRE(v.accepted());
            CHECK(v.weil_class->is_real == c.is_real);
            SymmetricPolynomial h = symmetric_polynomial(c);
            CHECK(h.substitute(c.context.q, c.degree()) == c.poly);
            if (!c.is_real) {
                bool ordinary = slope_type(c).type == SlopeType::ordinary;
                bool coprime = mod(c.poly.coeff(c.half_degree()), c.context.p) != 0;
                CHECK(ordinary == coprime);
            }
        }
    }
}

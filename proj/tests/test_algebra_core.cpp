#include <random>

#include "doctest.h"
#include "weilkit/finite_field.hpp"
#include "weilkit/integer_factor.hpp"
#include "weilkit/matrix.hpp"
#include "weilkit/resultant.hpp"
#include "weilkit/sturm.hpp"

using namespace weilkit;

namespace {

IntPolynomial P(std::initializer_list<long> c) {
    std::vector<Integer> v;
    for (long x : c) v.emplace_back(x);
    return IntPolynomial(v);
}

IntegerMatrix M(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<Integer>> r;
    for (auto row : rows) {
        std::vector<Integer> v;
        for (long x : row) v.emplace_back(x);
        r.push_back(v);
    }
    return IntegerMatrix::from_rows(r);
}

Integer sylvester_resultant(const IntPolynomial& a, const IntPolynomial& b) {
    const int m = a.degree(), n = b.degree();
    IntegerMatrix s(static_cast<std::size_t>(m + n), static_cast<std::size_t>(m + n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + j)) = a.coeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s(static_cast<std::size_t>(n + i), static_cast<std::size_t>(i + j)) = b.coeff(n - j);
    return determinant(s);
}

IntPolynomial random_poly(std::mt19937_64& rng, int deg, long bound) {
    std::uniform_int_distribution<long> d(-bound, bound);
    std::vector<Integer> c(static_cast<std::size_t>(deg) + 1);
    for (auto& x : c) x = d(rng);
    if (c.back() == 0) c.back() = 1;
    return IntPolynomial(c);
}

}  // namespace

TEST_CASE("polynomial arithmetic and wire format") {
    IntPolynomial f = parse_polynomial("32,-2,1");
    CHECK(f.degree() == 2);
    CHECK(to_wire(f) == "32,-2,1");
    CHECK(to_string(f) == "x^2 - 2*x + 32");
    CHECK(f(Integer(1)) == 31);
    CHECK(f.derivative() == P({-2, 2}));
    CHECK(P({1, 1}) * P({-1, 1}) == P({-1, 0, 1}));
    CHECK(P({0, 1}).compose(P({1, 1})) == P({1, 1}));
    auto [q, r] = divmod(P({-1, 0, 0, 1}), P({-1, 1}));
    CHECK(q == P({1, 1, 1}));
    CHECK(r.is_zero());
    CHECK_THROWS_AS(parse_polynomial("1,,2"), Error);
    CHECK_THROWS_AS(parse_polynomial("1,a"), Error);
    CHECK_THROWS_AS(parse_polynomial(""), Error);
    CHECK(gcd(P({-1, 0, 1}), P({1, 2, 1})) == P({1, 1}));
    CHECK(is_squarefree(P({-2, 0, 1})));
    CHECK_FALSE(is_squarefree(P({1, 2, 1})));
}

TEST_CASE("sturm_count examples") {
    CHECK(sturm_count(P({-2, 0, 1}), -2, 2) == 2);
    CHECK(sturm_count(P({1, 0, 1}), -10, 10) == 0);
    CHECK(sturm_count(P({-6, 11, -6, 1}), 0, 4) == 3);
    // Half-open interval: right endpoint counted, left endpoint not.
    CHECK(sturm_count(P({-6, 11, -6, 1}), 1, 3) == 2);
    CHECK_THROWS_WITH(sturm_count(P({1, 2, 1}), -5, 5), "squarefree required");
}

TEST_CASE("sturm_count at quadratic irrational endpoints") {
    SturmSequence s(P({-8, 0, 1}));  // roots +-2*sqrt(2)
    RealPoint lo = RealPoint::quadratic(0, -2, 2), hi = RealPoint::quadratic(0, 2, 2);
    CHECK(s.count(lo, hi) == 1);  // only the right endpoint
    CHECK(s.count_real_roots() == 2);
    CHECK(sign_at(P({-8, 0, 1}), hi) == 0);
    CHECK(sign_at(P({-7, 0, 1}), hi) == 1);
}

TEST_CASE("sturm_count matches known roots on random products") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-12, 12), den(1, 4), pos(1, 9);
    for (int trial = 0; trial < 200; ++trial) {
        // Distinct rational roots plus an optional root-free quadratic factor.
        std::vector<Rational> roots;
        int nroots = static_cast<int>(rng() % 4) + 1;
        IntPolynomial f = P({1});
        while (static_cast<int>(roots.size()) < nroots) {
            Rational r(num(rng), den(rng));
            r.canonicalize();
            if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
            roots.push_back(r);
            f = f * IntPolynomial({-Integer(r.get_num()), Integer(r.get_den())});
        }
        if (nroots <= 3 && rng() % 2) f = f * P({pos(rng), 0, 1});
        Rational a(num(rng), den(rng)), b = a + Rational(static_cast<long>(pos(rng)), 2);
        int expected = 0;
        for (const auto& r : roots)
            if (r > a && r <= b) ++expected;
        CHECK(sturm_count(f, a, b) == expected);
    }
}

TEST_CASE("resultant examples") {
    CHECK(resultant(P({3, 0, 1}), P({3, 1, 1})) == 3);
    CHECK(resultant(P({-1, 1}), P({-1, 1})) == 0);
    // Sylvester convention: Res(x, x-5) = -5 and Res(x-5, x) = 5.
    CHECK(resultant(P({0, 1}), P({-5, 1})) == -5);
    CHECK(resultant(P({-5, 1}), P({0, 1})) == 5);
    CHECK_THROWS_AS(resultant(IntPolynomial(), P({1, 1})), Error);
    CHECK(discriminant(P({-2, 0, 1})) == 8);
    CHECK(discriminant(P({32, -2, 1})) == -124);
}

TEST_CASE("resultant vanishes exactly on common factors and matches Sylvester") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        int da = static_cast<int>(rng() % 6) + 1, db = static_cast<int>(rng() % 6) + 1;
        IntPolynomial a = random_poly(rng, da, 20), b = random_poly(rng, db, 20);
        if (trial % 3 == 0) {
            IntPolynomial c = random_poly(rng, 1 + static_cast<int>(rng() % 2), 5);
            a = a * c;
            b = b * c;
            if (a.degree() > 6 || b.degree() > 6) continue;
        }
        Integer r = resultant(a, b);
        CHECK(r == sylvester_resultant(a, b));
        CHECK((r == 0) == (gcd(a, b).degree() > 0));
    }
}

TEST_CASE("smith_normal_form examples") {
    auto s = smith_normal_form(M({{2, 4}, {6, 8}}));
    CHECK(s.diagonal == std::vector<Integer>{2, 4});
    CHECK(s.U * M({{2, 4}, {6, 8}}) * s.V == s.D);
    CHECK(smith_normal_form(IntegerMatrix::identity(3)).diagonal == std::vector<Integer>{1, 1, 1});
    CHECK(smith_normal_form(M({{0, 0}, {0, 0}})).diagonal == std::vector<Integer>{0, 0});
}

TEST_CASE("smith_normal_form invariants on random matrices") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-30, 30);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        IntegerMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng) * (trial % 4 == 0 ? 6 : 1);
        auto s = smith_normal_form(m);
        CHECK(s.U * m * s.V == s.D);
        CHECK(abs(determinant(s.U)) == 1);
        CHECK(abs(determinant(s.V)) == 1);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j) CHECK(s.D(i, j) == 0);
        for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
            if (s.diagonal[i] == 0) {
                CHECK(s.diagonal[i + 1] == 0);
            } else {
                CHECK(mpz_divisible_p(s.diagonal[i + 1].get_mpz_t(), s.diagonal[i].get_mpz_t()));
            }
        }
        if (r == c) {
            Integer prod = 1;
            for (const auto& v : s.diagonal) prod *= v;
            CHECK(abs(determinant(m)) == prod);
        }
    }
}

TEST_CASE("hermite normal form, kernels and lattice indices") {
    IntegerMatrix m = M({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    auto h = hermite_normal_form(m);
    CHECK(h.U * m == h.H);
    CHECK(abs(determinant(h.U)) == 1);
    CHECK(h.rank == 3);
    for (std::size_t i = 0; i < h.rank; ++i) {
        std::size_t c = h.pivot_cols[i];
        CHECK(h.H(i, c) > 0);
        for (std::size_t k = 0; k < i; ++k) {
            CHECK(h.H(k, c) >= 0);
            CHECK(h.H(k, c) < h.H(i, c));
        }
    }
    IntegerMatrix k = integer_kernel(M({{1, 2, 3}, {4, 5, 6}}));
    REQUIRE(k.rows() == 1);
    CHECK(M({{1, 2, 3}, {4, 5, 6}}).apply(k.row(0)) == std::vector<Integer>{0, 0});
    CHECK(abs(k(0, 0)) == 1);
    CHECK(lattice_index(M({{1, 0}, {0, 2}}), IntegerMatrix::identity(2)) == 2);
    CHECK(lattice_index(M({{2, 0}, {1, 3}}), IntegerMatrix::identity(2)) == 6);
    CHECK_THROWS_AS(lattice_index(IntegerMatrix::identity(2), M({{2, 0}, {0, 1}})), Error);
    auto x = solve_in_row_lattice(M({{2, 0}, {0, 3}}), {Integer(4), Integer(9)});
    REQUIRE(x);
    CHECK(*x == std::vector<Integer>{2, 3});
    CHECK_FALSE(solve_in_row_lattice(M({{2, 0}, {0, 3}}), {Integer(1), Integer(0)}));
}

TEST_CASE("local Smith form and solving modulo prime powers") {
    IntegerMatrix m = M({{3, 6}, {9, 3}});
    auto s = local_smith_form(m, 3, 4);
    CHECK(s.valuations == std::vector<long>{1, 1});
    IntegerMatrix prod = s.U * m * s.V;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(mod(prod(i, j) - s.D(i, j), Integer(81)) == 0);
    CHECK(solve_mod_prime_power(m, {Integer(3), Integer(0)}, 3, 4));
    CHECK_FALSE(solve_mod_prime_power(m, {Integer(1), Integer(0)}, 3, 4));
    auto ker = kernel_mod_prime_power(M({{1, 1}}), 5, 3);
    CHECK(ker.free_part.cols() == 1);
    CHECK(ker.stable_precision == 3);
}

TEST_CASE("factor_over_prime_field examples") {
    auto f1 = factor_over_prime_field(P({1, 0, 1}), 3);
    REQUIRE(f1.size() == 1);
    CHECK(f1[0].first.coefficients() == std::vector<std::int64_t>{1, 0, 1});
    CHECK(f1[0].second == 1);
    auto f2 = factor_over_prime_field(P({0, 1, 1}), 3);
    REQUIRE(f2.size() == 2);
    CHECK(f2[0].first.coefficients() == std::vector<std::int64_t>{0, 1});
    CHECK(f2[1].first.coefficients() == std::vector<std::int64_t>{1, 1});
    auto f3 = factor_over_prime_field(P({-1, 0, 0, 0, 1}), 5);
    REQUIRE(f3.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(f3[i].first.degree() == 1);
        CHECK(f3[i].second == 1);
    }
    CHECK_THROWS_AS(factor_over_prime_field(P({3, 6}), 3), Error);
    auto f4 = factor_over_prime_field(P({1, 2, 1}), 7);
    REQUIRE(f4.size() == 1);
    CHECK(f4[0].second == 2);
}

TEST_CASE("factor_over_prime_field products and irreducibility certificates") {
    std::mt19937_64 rng(5);
    for (std::int64_t p : {2, 3, 5, 7, 13}) {
        for (int trial = 0; trial < 40; ++trial) {
            IntPolynomial f = random_poly(rng, 1 + static_cast<int>(rng() % 8), 40);
            FpPolynomial g = FpPolynomial::from_integer(f, p);
            if (g.is_zero()) continue;
            auto fac = factor(g);
            FpPolynomial prod(p, {1});
            for (const auto& [h, m] : fac) {
                for (int i = 0; i < m; ++i) prod = prod * h;
                if (h.degree() <= 3) {
                    // Exhaustive root search certifies irreducibility up to degree 3.
                    for (std::int64_t a = 0; a < p && h.degree() > 1; ++a) {
                        std::int64_t v = 0;
                        for (int i = h.degree(); i >= 0; --i) v = (v * a + h.coeff(i)) % p;
                        CHECK(v != 0);
                    }
                } else {
                    CHECK(is_irreducible(h));
                }
            }
            CHECK(prod == g.monic());
        }
    }
}

TEST_CASE("finite fields") {
    auto f9 = FiniteField::standard(3, 2);
    CHECK(f9.modulus().coefficients() == std::vector<std::int64_t>{1, 0, 1});
    auto t = f9.generator();
    CHECK(f9.mul(t, t) == f9.embed(-1));
    CHECK(f9.mul(t, f9.inv(t)) == f9.one());
    CHECK(f9.pow(t, 9) == t);
    CHECK(FiniteField::standard(2, 3).modulus().coefficients() == std::vector<std::int64_t>{1, 0, 1, 1});
    auto F = std::make_shared<const FiniteField>(f9);
    // t + 1 generates F_9^*, so y^2 - (t + 1) is irreducible; y^2 - 1 splits.
    FqPolynomial a(F, {f9.neg(f9.add(t, f9.one())), f9.zero(), f9.one()});
    CHECK(a.is_squarefree());
    CHECK(a.factor_degrees() == std::vector<int>{2});
    FqPolynomial b(F, {f9.embed(-1), f9.zero(), f9.one()});
    CHECK(b.factor_degrees() == std::vector<int>{1, 1});
    FqPolynomial c(F, {f9.one(), f9.embed(2), f9.one()});
    CHECK_FALSE(c.is_squarefree());
}

TEST_CASE("Hensel lifting and factorization over Z") {
    auto lifted = hensel_lift(P({-1, 0, 1}), {P({-1, 1}), P({1, 1})}, 7, 2);
    CHECK(lifted[0] == P({48, 1}));
    CHECK(lifted[1] == P({1, 1}));
    CHECK_THROWS_AS(hensel_lift(P({6, -7, 1}), {P({-1, 1}), P({-1, 1})}, 5, 2), Error);
    CHECK(is_irreducible_over_q(P({1, 0, 0, 0, 1})));
    CHECK(is_irreducible_over_q(P({1, 0, -10, 0, 1})));
    CHECK_FALSE(is_irreducible_over_q(P({-2, 0, -1, 0, 1})));
    auto fac = factor_over_z(P({-2, 0, -1, 0, 1}));  // (x^2+1)(x^2-2)
    REQUIRE(fac.size() == 2);
    CHECK(fac[0] == P({-2, 0, 1}));
    CHECK(fac[1] == P({1, 0, 1}));
    CHECK(is_irreducible_over_q(P({32, -2, 1})));
    CHECK_FALSE(is_irreducible_over_q(P({-9, 0, 1})));
}

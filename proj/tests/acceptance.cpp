// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "weilkit/central_orders.hpp"
#include "weilkit/dieudonne.hpp"
#include "weilkit/honda_tate.hpp"
#include "weilkit/integer_factor.hpp"
#include "weilkit/ip_example.hpp"
#include "weilkit/weil.hpp"

using namespace weilkit;

namespace {

// Collects failed checks with a short description.
struct Checker {
    std::vector<std::string> failures;
    void operator()(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

IntPolynomial poly(std::initializer_list<long> c) {
    std::vector<Integer> v;
    for (long x : c) v.emplace_back(x);
    return IntPolynomial(v);
}

GlobalContext ctx(long q) { return GlobalContext::from_q(Integer(q)); }

WeilSet wset(std::initializer_list<std::initializer_list<long>> polys, long q) {
    std::vector<WeilClass> classes;
    for (const auto& c : polys) {
        const auto v = validate_weil(poly(c), ctx(q));
        if (!v.accepted()) throw Error("not a Weil polynomial: " + to_wire(poly(c)));
        classes.push_back(*v.weil_class);
    }
    return make_weil_set(std::move(classes));
}

std::string str(const Integer& a) { return a.get_str(); }

// Honda-Tate records of every enumerated class, q in {2,3,4,9,32}, degree <= 6.
const std::vector<HondaTateRecord>& grid() {
    static const std::vector<HondaTateRecord> records = [] {
        std::vector<HondaTateRecord> out;
        for (long q : {2L, 3L, 4L, 9L, 32L})
            for (const auto& c : enumerate_weil(ctx(q), 6)) out.push_back(honda_tate_record(c));
        return out;
    }();
    return records;
}

void criterion1(Checker& check) {
    const Sec9Example ex = example_sec9(Integer(3));
    check(ex.record.s == 1, "s_pi = " + std::to_string(ex.record.s));
    check(ex.record.places.size() == 1 && ex.record.real_place_count == 0, "expected one finite place above 3");
    if (!ex.record.places.empty()) {
        const auto& pl = ex.record.places.front();
        check(pl.f == 2 && pl.e == 1, "place is not inert of degree 2");
        check(pl.invariant == 0, "local invariant " + to_string(pl.invariant));
    }
    check(ex.r_pi_index == 3, "[Z[i] : R_pi] = " + str(ex.r_pi_index));
    check(ex.psi.relations_hold(), "psi relations fail");
    check(ex.lattice_classes == 2, "stable lattice classes = " + std::to_string(ex.lattice_classes));
    check(ex.psi.order.index == 81, "psi(D_pi) index = " + str(ex.psi.order.index));
    check(ex.s_pi.order.index == 81, "S_pi index = " + str(ex.s_pi.order.index));
    check(ex.s_pi.center_is_z_ip, "center of S_pi is not Z[3i]");
    check(ex.s_pi.center_index == 3, "center index in Z[i] = " + str(ex.s_pi.center_index));
}

void criterion2(Checker& check) {
    const auto rec = honda_tate_record(wset({{32, -2, 1}}, 32).classes.front());
    std::multiset<Rational> vals;
    for (const auto& pl : rec.places)
        for (int i = 0; i < pl.e * pl.f; ++i) vals.insert(pl.root_valuation);
    check(vals == std::multiset<Rational>{Rational(1), Rational(4)}, "root valuations are not {1, 4}");
    check(rec.s == 5, "s = " + std::to_string(rec.s));
    check(rec.dim == 5, "dim B = " + std::to_string(rec.dim));
    check(rec.m == 2, "m = " + std::to_string(rec.m));
    check(rec.m_reduced && *rec.m_reduced == 1, "m_reduced != 1");
}

void criterion3(Checker& check) {
    for (const auto& [q, r, divisor] : {std::tuple{8L, 3, 12L}, std::tuple{32L, 5, 20L}}) {
        const auto g = gamma_witnesses(ctx(q));
        const std::string at = " at q=" + std::to_string(q);
        check(g.s_equals_r && g.s_equals_r->s == r, "missing s = r certificate" + at);
        check(!g.s_equals_two.empty(), "missing s = 2 certificate" + at);
        for (const auto& rec : g.s_equals_two) check(rec.s == 2, "s = 2 certificate has s = " + std::to_string(rec.s) + at);
        check(g.divisor == divisor, "divisor " + str(g.divisor) + at);
        check(g.divisor == 2 * std::lcm(r, 2), "divisor is not 2 lcm(r, 2)" + at);
    }
}

void criterion4(Checker& check) {
    const auto w = wset({{3, 0, 1}, {3, 1, 1}}, 3);
    const auto comps = connected_components(w);
    check(comps.size() == 2, "{x^2+3, x^2+x+3} has " + std::to_string(comps.size()) + " components");
    check(product_index(w, comps) == 1, "product index " + str(product_index(w, comps)));
    const auto control = connected_components(wset({{3, 0, 1}, {3, -3, 1}}, 3));
    check(control.size() == 1, "control set has " + std::to_string(control.size()) + " components");
}

void criterion5(Checker& check) {
    const std::vector<std::pair<WeilSet, std::string>> sets{
        {wset({{9, 0, 1}}, 9), "{x^2+9}"}, {wset({{9, -1, 1}}, 9), "{x^2-x+9}"}, {wset({{-3, 1}, {3, 1}}, 9), "{x-3,x+3}"}};
    for (const auto& [w, name] : sets) {
        const auto cmp = verify_center_at_two_precisions(w, 4);
        check(cmp.low.passed() && cmp.high.passed(), "center differs from image of R_w for " + name);
        check(cmp.truncations_agree, "truncations at k and k+2 disagree for " + name);
        check(cmp.low.center_rank == w.P.degree() && cmp.high.center_rank == w.P.degree(),
              "center rank != deg(w) for " + name);
    }
}

void criterion6(Checker& check) {
    for (long q : {2L, 4L, 32L}) {
        const auto c = ctx(q);
        for (long dim : {1L, 2L, 5L}) {
            check(rank_of_T(dim, c, false) == 4 * c.r * dim, "rank_of_T full, q=" + std::to_string(q));
            check(rank_of_T(dim, c, true) == 2 * c.r * dim, "rank_of_T reduced, q=" + std::to_string(q));
        }
    }
    for (const auto& rec : grid()) {
        const int r = rec.weil_class.context.r;
        check(rec.m * rec.s == 2 * r, "m s != 2r for " + to_wire(rec.weil_class.poly));
    }
}

// Coefficient of x^(d/2); real classes of odd degree have none and are never ordinary.
std::optional<Integer> middle_coefficient(const IntPolynomial& f) {
    if (f.degree() % 2 != 0) return std::nullopt;
    return f.coefficients()[f.degree() / 2];
}

void criterion7(Checker& check) {
    for (const auto& rec : grid()) {
        const auto& c = rec.weil_class;
        const int r = c.context.r;
        const std::string at = " for " + to_wire(c.poly) + " at q=" + str(c.context.q);
        check(std::lcm(r, 2) % rec.s == 0, "s does not divide lcm(r,2)" + at);
        check(2 * rec.dim == static_cast<long>(rec.s) * c.degree(), "2 dim != s deg" + at);
        check(invariant_sum(rec).get_den() == 1, "invariant sum not integral" + at);
        auto slopes = rec.slopes;
        std::sort(slopes.begin(), slopes.end());
        bool symmetric = true;
        for (std::size_t i = 0; i < slopes.size(); ++i)
            symmetric = symmetric && slopes[i] + slopes[slopes.size() - 1 - i] == r;
        check(symmetric, "slopes not symmetric under s -> r - s" + at);
        const auto mid = middle_coefficient(c.poly);
        const bool coprime = mid && gcd(*mid, c.context.p) == 1;
        check((rec.slope_type == SlopeType::ordinary) == coprime, "ordinary <=> middle coefficient coprime fails" + at);
    }
}

// Every monic polynomial of degree <= 4 whose coefficients obey
// |c_{d-i}| <= binom(d, i) q^(i/2), kept when validate_weil accepts it.
std::set<std::string> coefficient_scan(long q, int max_degree) {
    std::set<std::string> out;
    const auto c = ctx(q);
    for (int d = 1; d <= max_degree; ++d) {
        std::vector<long> bound(d + 1);
        for (int i = 1; i <= d; ++i) {
            const double binom = std::tgamma(d + 1) / (std::tgamma(i + 1) * std::tgamma(d - i + 1));
            bound[i] = static_cast<long>(std::floor(binom * std::pow(static_cast<double>(q), i / 2.0) + 1e-9));
        }
        std::vector<long> coef(d + 1, 0);  // coef[i] multiplies x^(d-i)
        coef[0] = 1;
        std::function<void(int)> scan = [&](int i) {
            if (i > d) {
                std::vector<Integer> v(d + 1);
                for (int k = 0; k <= d; ++k) v[d - k] = Integer(coef[k]);
                const IntPolynomial f(v);
                if (validate_weil(f, c).accepted()) out.insert(to_wire(f));
                return;
            }
            for (long x = -bound[i]; x <= bound[i]; ++x) {
                coef[i] = x;
                scan(i + 1);
            }
        };
        scan(1);
    }
    return out;
}

void criterion8(Checker& check) {
    std::set<std::string> enumerated;
    long nonreal_degree2 = 0;
    for (const auto& c : enumerate_weil(ctx(2), 4)) {
        enumerated.insert(to_wire(c.poly));
        if (c.degree() == 2 && !c.is_real) ++nonreal_degree2;
    }
    const auto oracle = coefficient_scan(2, 4);
    check(enumerated == oracle, "enumeration (" + std::to_string(enumerated.size()) + ") != oracle (" +
                                    std::to_string(oracle.size()) + ")");
    check(nonreal_degree2 == 5, "degree-2 non-real count " + std::to_string(nonreal_degree2));
}

void criterion9(Checker& check) {
    struct Case {
        WeilSet w;
        long k;
        std::string name;
    };
    std::vector<Case> cases{
        {wset({{9, 0, 1}}, 9), 3, "{x^2+9}"},
        {wset({{9, -1, 1}}, 9), 3, "{x^2-x+9}"},
        {wset({{-3, 1}, {3, 1}}, 9), 3, "{x-3,x+3}"},
        {wset({{9, 0, 1}, {-3, 1}}, 9), 3, "{x^2+9,x-3}"},
        {wset({{-3, 0, 1}}, 3), 3, "{x^2-3} q=3"},
        {wset({{8, 1, 1}}, 8), 3, "{x^2+x+8} q=8"},
        {wset({{32, -2, 1}}, 32), 2, "{x^2-2x+32} q=32"},
        {wset({{4, 2, 1, 1, 1}}, 2), 3, "{x^4+x^3+x^2+2x+4} q=2"},
        {wset({{16, -12, 7, -3, 1}}, 4), 2, "{x^4-3x^3+7x^2-12x+16} q=4"},
    };
    for (long q : {2L, 3L, 4L})
        for (const auto& c : enumerate_weil(ctx(q), 2))
            cases.push_back({make_weil_set({c}), 3, "{" + to_wire(c.poly) + "} q=" + std::to_string(q)});
    for (const auto& [w, k, name] : cases) {
        const auto alg = build_dieudonne(w, k);
        const auto rep = check_structure(alg, true);
        check(rep.associativity_failures == 0, "associativity fails for " + name);
        check(rep.fv_equals_p && rep.vf_equals_p, "FV != p for " + name);
        check(rep.sigma_order_r, "sigma^r != id for " + name);
        const long r = w.context.r;
        check(static_cast<long>(alg.zp_rank()) == r * r * w.P.degree() && rep.rank_formula, "Z_p-rank != r^2 deg for " + name);
        check(rep.ok(), "structure report not ok for " + name);
    }
}

void criterion10(Checker& check) {
    const Sec9Example ex = example_sec9(Integer(3));
    check(!ex.labelings.empty(), "no fiber product computed");
    for (const auto& l : ex.labelings) {
        check(l.fiber_product.witt_colength == 1, l.name + ": Witt colength " + std::to_string(l.fiber_product.witt_colength));
        check(l.fiber_product.index == 9, l.name + ": Z_p-index " + str(l.fiber_product.index));
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria{
        {"worked example x^2+9 over F_9 (p=3)", criterion1},
        {"q=32 class x^2-2x+32: valuations {1,4}, s=5, dim 5, m=2, m_reduced=1", criterion2},
        {"gamma witnesses for q in {8,32} with divisors {12,20}", criterion3},
        {"connected components over F_3", criterion4},
        {"center of the Dieudonne algebra at precisions k and k+2", criterion5},
        {"rank formulas and m s = 2r on the enumeration grid", criterion6},
        {"Honda-Tate property suite on the enumeration grid", criterion7},
        {"enumeration equals the coefficient-scan oracle for q=2, degree <= 4", criterion8},
        {"Dieudonne structure suite", criterion9},
        {"fiber product lattice: Witt colength 1, index 9", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Checker check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool ok = check.failures.empty();
        failed += ok ? 0 : 1;
        std::printf("%s [%zu] %s (%.2fs)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs);
        for (std::size_t j = 0; j < check.failures.size() && j < 10; ++j) std::printf("    %s\n", check.failures[j].c_str());
        if (check.failures.size() > 10) std::printf("    ... %zu more\n", check.failures.size() - 10);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}

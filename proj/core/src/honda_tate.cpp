#include "weilkit/honda_tate.hpp"

#include <numeric>

namespace weilkit {

namespace {

int real_places(const WeilClass& c) {
    if (!c.is_real) return 0;
    return c.degree();  // x - eps p^m has one real place, x^2 - q two
}

}  // namespace

HondaTateRecord honda_tate_record(const WeilClass& c, const DecomposeOptions& options) {
    HondaTateRecord rec;
    rec.weil_class = c;
    rec.places = decompose_places(c.poly, c.context.p, c.context.r, options);
    rec.real_place_count = real_places(c);
    long s = rec.real_place_count > 0 ? 2 : 1;
    for (const auto& pl : rec.places) s = std::lcm(s, pl.invariant.get_den().get_si());
    rec.s = static_cast<int>(s);
    rec.dim = s * c.degree() / 2;
    const int r = c.context.r;
    if ((2 * r) % rec.s != 0) throw Error("index s does not divide 2r for " + to_wire(c.poly));
    rec.m = 2 * r / rec.s;
    if (!(r % 2 != 0 && c.is_real)) rec.m_reduced = r / rec.s;
    SlopeInfo info = slope_type(c);
    rec.slope_type = info.type;
    rec.slopes = std::move(info.slopes);
    return rec;
}

Rational invariant_sum(const HondaTateRecord& rec) {
    Rational total = Rational(rec.real_place_count, 2);
    total.canonicalize();
    for (const auto& pl : rec.places) total += pl.invariant;
    return total;
}

long rank_of_T(long dim_x, const GlobalContext& ctx, bool reduced) { return (reduced ? 2 : 4) * ctx.r * dim_x; }

std::string to_string(CommutativeType t) {
    switch (t) {
        case CommutativeType::commutative_ordinary: return "commutative_ordinary";
        case CommutativeType::commutative_p_nonreal: return "commutative_p_nonreal";
        case CommutativeType::noncommutative: return "noncommutative";
    }
    return "unknown";
}

CommutativeType commutative_classifier(const WeilSet& w) {
    bool all_ordinary = true, any_real = false;
    for (const auto& c : w.classes) {
        if (slope_type(c).type != SlopeType::ordinary) all_ordinary = false;
        if (c.is_real) any_real = true;
    }
    if (all_ordinary) return CommutativeType::commutative_ordinary;
    if (w.context.r == 1 && !any_real) return CommutativeType::commutative_p_nonreal;
    return CommutativeType::noncommutative;
}

GammaWitnesses gamma_witnesses(const GlobalContext& ctx) {
    GammaWitnesses out;
    const int r = ctx.r;
    out.divisor = 2 * std::lcm(r, 2);
    long reach = 1;
    if (r > 2) {
        auto v = validate_weil(IntPolynomial{ctx.q, Integer(-ctx.p), Integer(1)}, ctx);
        if (!v.accepted()) throw Error("x^2 - p x + q is not a Weil polynomial");
        HondaTateRecord rec = honda_tate_record(*v.weil_class);
        if (rec.s != r) throw Error("witness x^2 - p x + q has s != r");
        reach = std::lcm(reach, 2L * rec.s);
        out.s_equals_r = std::move(rec);
    } else {
        out.note = "r <= 2: no class with s = r > 2 is needed";
    }
    for (const auto& c : real_classes(ctx)) {
        HondaTateRecord rec = honda_tate_record(c);
        if (rec.s != 2) throw Error("real class " + to_wire(c.poly) + " has s != 2");
        reach = std::lcm(reach, 2L * rec.s);
        out.s_equals_two.push_back(std::move(rec));
    }
    if (r > 2 && Integer(reach) != out.divisor) throw Error("witnesses do not reach 2 lcm(r, 2)");
    return out;
}

int minimal_cogenerator_dimension_supersingular_elliptic(const WeilClass& c) {
    if (c.degree() > 2) throw PreconditionError("class is not elliptic (degree > 2)");
    HondaTateRecord rec = honda_tate_record(c);
    if (rec.dim != 1) throw PreconditionError("class is not elliptic (dim B = " + std::to_string(rec.dim) + ")");
    if (rec.slope_type != SlopeType::supersingular) throw PreconditionError("class is not supersingular");
    const int r = c.context.r;
    return c.degree() == 2 ? r : r / 2;
}

}  // namespace weilkit

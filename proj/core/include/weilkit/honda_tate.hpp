#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weilkit/padic.hpp"
#include "weilkit/weil.hpp"

namespace weilkit {

// Numerical Honda-Tate data of one class: the local invariants of the
// endomorphism algebra E, its index s, dim B = s deg / 2 and the
// multiplicities m = 2r/s and (when defined) m_reduced = r/s.
struct HondaTateRecord {
    WeilClass weil_class;
    std::vector<PlaceAboveP> places;
    int real_place_count = 0;
    int s = 1;
    long dim = 0;
    int m = 0;
    std::optional<int> m_reduced;
    SlopeType slope_type = SlopeType::mixed;
    std::vector<Rational> slopes;
};

HondaTateRecord honda_tate_record(const WeilClass& c, const DecomposeOptions& options = {});

// Sum of the local invariants plus 1/2 per real place.
Rational invariant_sum(const HondaTateRecord& rec);

// Z-rank of T_w(X): 4 r dim X, or 2 r dim X for the reduced variant.
long rank_of_T(long dim_x, const GlobalContext& ctx, bool reduced);

enum class CommutativeType { commutative_ordinary, commutative_p_nonreal, noncommutative };
std::string to_string(CommutativeType t);
CommutativeType commutative_classifier(const WeilSet& w);

struct GammaWitnesses {
    std::optional<HondaTateRecord> s_equals_r;  // x^2 - p x + q, present when r > 2
    std::vector<HondaTateRecord> s_equals_two;  // the real classes
    Integer divisor;                            // 2 lcm(r, 2)
    std::string note;
};
GammaWitnesses gamma_witnesses(const GlobalContext& ctx);

// r for a non-rational supersingular elliptic class, r/2 for a rational one.
int minimal_cogenerator_dimension_supersingular_elliptic(const WeilClass& c);

}  // namespace weilkit

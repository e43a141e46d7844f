#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weilkit/matrix.hpp"
#include "weilkit/weil.hpp"
#include "weilkit/witt.hpp"

namespace weilkit {

// D_w = W(F_q){F, V}/(FV - p, relation) modulo p^k, with W(F_q)-basis F_i for
// -N <= i < N, N = deg(w) r / 2, where F_i = F^i (i > 0), 1, V^-i (i < 0).
// An element is a list of 2N Witt coefficients, the coefficient of F_i at
// position i + N, written on the left: sum a_i F_i.
class DieudonneAlgebra {
public:
    using Witt = WittRingModel::Element;
    using Element = std::vector<Witt>;

    const WeilSet& weil_set() const { return w_; }
    const WittRingModel& witt() const { return witt_; }
    const Integer& p() const { return witt_.p(); }
    long precision() const { return witt_.precision(); }
    int N() const { return N_; }
    int r() const { return witt_.degree(); }
    std::size_t witt_rank() const { return static_cast<std::size_t>(2 * N_); }
    std::size_t zp_rank() const { return witt_rank() * static_cast<std::size_t>(r()); }

    // Defining relation as sum rho_j F_j, j = -N..N (integer coefficients).
    const std::vector<Integer>& relation() const { return relation_; }
    // F_n for -2N <= n <= 2N as integer coefficient vectors over the basis.
    const std::vector<Integer>& rewrite(int n) const;
    const std::vector<Integer>& top_rewrite() const { return rewrite(N_); }
    const std::vector<Integer>& bottom_rewrite() const { return rewrite(-N_ - 1); }
    // F_i F_j for basis indices, after boundary rewriting.
    const std::vector<Integer>& product_rule(int i, int j) const;

    Element zero() const;
    Element one() const { return power_element(0); }
    Element scalar(const Witt& a) const;
    Element basis_element(int i) const;  // F_i, -N <= i < N
    // F_n for -2N <= n <= 2N.
    Element power_element(int n) const;
    Element frobenius() const { return power_element(1); }
    Element verschiebung() const { return power_element(-1); }

    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element scale(const Integer& s, const Element& a) const;
    Element multiply(const Element& a, const Element& b) const;
    Element power(const Element& a, unsigned long e) const;
    bool is_zero(const Element& a) const;
    bool is_zero_mod_p(const Element& a) const;

    // Z_p-coordinates: position (i + N) r + alpha holds the t^alpha part of the F_i coefficient.
    std::vector<Integer> coordinates(const Element& a) const;
    Element from_coordinates(const std::vector<Integer>& c) const;
    Element zp_basis(std::size_t index) const;
    std::string zp_basis_label(std::size_t index) const;
    // Coefficient of Z_p-basis element c in b_a * b_b.
    Integer structure_constant(std::size_t a, std::size_t b, std::size_t c) const;

    // Image of F^i (i > 0) or V^-i (i < 0) from R_w, computed by repeated multiplication.
    Element central_image(int i) const;
    // Exponents of the Z-basis of R_w: F^d, ..., V^(d-1) (even) or F^d0, ..., V^d0 (odd).
    std::vector<int> center_basis_exponents() const;

    friend DieudonneAlgebra build_dieudonne(const WeilSet& w, long k);

private:
    DieudonneAlgebra(WeilSet w, long k);
    std::size_t slot(int i) const { return static_cast<std::size_t>(i + N_); }

    WeilSet w_;
    WittRingModel witt_;
    int N_ = 0;
    std::vector<Integer> relation_;
    std::vector<std::vector<Integer>> rewrites_;  // n = -2N..2N
    std::vector<std::vector<Integer>> products_;  // (i + N) * 2N + (j + N)
};

// Throws PreconditionError for k < 2 and Error if a structural invariant fails.
DieudonneAlgebra build_dieudonne(const WeilSet& w, long k);

struct DieudonneStructureReport {
    long triples_checked = 0;
    long associativity_failures = 0;
    bool fv_equals_p = false;
    bool vf_equals_p = false;
    bool sigma_order_r = false;
    bool exponent_rule = false;
    bool rank_formula = false;
    bool relation_vanishes = false;
    bool ok() const {
        return associativity_failures == 0 && fv_equals_p && vf_equals_p && sigma_order_r && exponent_rule &&
               rank_formula && relation_vanishes;
    }
};
// Associativity on all Z_p-basis triples (full = true) or on the F_i triples.
DieudonneStructureReport check_structure(const DieudonneAlgebra& alg, bool full = true);

struct CenterReport {
    long precision = 0;
    long stable_precision = 0;     // precision at which the comparison is exact
    std::size_t center_rank = 0;   // free rank of the centralizer solution
    std::size_t expected_rank = 0; // deg(w)
    IntegerMatrix center_basis;    // columns: Z_p-coordinates of central elements
    IntegerMatrix image_basis;     // columns: images of the Z-basis of R_w
    bool equal = false;
    std::optional<std::vector<Integer>> witness;  // element in one module but not the other
    bool passed() const { return equal && center_rank == expected_rank; }
};
CenterReport verify_center(const DieudonneAlgebra& alg);

// verify_center at precisions k and k + 2, compared after truncation.
struct CenterComparison {
    CenterReport low, high;
    long common_precision = 0;
    bool truncations_agree = false;
    bool passed() const { return low.passed() && high.passed() && truncations_agree; }
};
CenterComparison verify_center_at_two_precisions(const WeilSet& w, long k);

// Canonical basis (HNF rows) of the span of the columns plus p^j Z^n.
IntegerMatrix canonical_module(const IntegerMatrix& columns, const Integer& p, long j);

enum class OrdinaryVerdict { verified, inconclusive };
std::string to_string(OrdinaryVerdict v);

struct OrdinaryCheck {
    OrdinaryVerdict verdict = OrdinaryVerdict::inconclusive;
    std::vector<DieudonneAlgebra::Element> idempotents;
    std::vector<std::size_t> corner_ranks;  // Z_p-rank of e D_w e
    std::string note;
};
// Looks for r orthogonal idempotents summing to 1 with e D_w e of rank deg(w),
// witnessing D_w = M_r(R_w (x) Z_p). Throws PreconditionError unless every
// class of w is ordinary.
OrdinaryCheck ordinary_matrix_check(const DieudonneAlgebra& alg, unsigned long seed = 1);

// F_p-linear action on Lambda / p Lambda.
struct LatticeModP {
    Integer p;
    std::size_t dimension = 0;
    std::vector<IntegerMatrix> generators;  // act on column vectors
};

struct StableSubspaces {
    std::vector<IntegerMatrix> all;     // reduced row echelon bases, sorted by dimension
    std::vector<IntegerMatrix> proper;  // neither 0 nor the whole space
};
// Every subspace stable under all generators. Throws for dimension > 10.
StableSubspaces enumerate_stable_lattices(const LatticeModP& action);
bool is_stable(const LatticeModP& action, const IntegerMatrix& subspace_rows);
// Reduced row echelon form over F_p with zero rows dropped.
IntegerMatrix row_echelon_mod_p(const IntegerMatrix& rows, const Integer& p);

}  // namespace weilkit

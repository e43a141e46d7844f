#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "weilkit/dieudonne.hpp"
#include "weilkit/honda_tate.hpp"

namespace weilkit {

// The supersingular class pi = i p over F_(p^2), p = 3 mod 4: E_pi = Q(i),
// D_pi embedded in M_2(Z_p[i]) by psi, and S_pi = End(A_pi) inside M_2(Z[i]).

struct GaussianInteger {
    Integer re, im;
    GaussianInteger conj() const { return {re, -im}; }
    friend GaussianInteger operator+(const GaussianInteger& a, const GaussianInteger& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianInteger operator-(const GaussianInteger& a, const GaussianInteger& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianInteger operator*(const GaussianInteger& a, const GaussianInteger& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussianInteger& a, const GaussianInteger& b) { return a.re == b.re && a.im == b.im; }
};

// [[a, b], [c, d]] stored as {a, b, c, d}; Z-coordinates (Re a, Im a, ..., Re d, Im d).
using GaussianMatrix = std::array<GaussianInteger, 4>;
GaussianMatrix operator*(const GaussianMatrix& x, const GaussianMatrix& y);
GaussianMatrix operator+(const GaussianMatrix& x, const GaussianMatrix& y);
std::vector<Integer> to_coordinates(const GaussianMatrix& m);
GaussianMatrix from_coordinates(const std::vector<Integer>& c);

GaussianMatrix psi_scalar(const GaussianInteger& a);  // diag(a, conj a)
GaussianMatrix psi_frobenius(const Integer& p);       // [[0, 1], [i p, 0]]
GaussianMatrix psi_verschiebung(const Integer& p);    // [[0, -i], [p, 0]]

// { [[a, b], [c, d]] : p | c and a = conj(d) mod p }.
bool sec9_predicate(const Integer& p, const std::vector<Integer>& coordinates);

struct OrderPresentation {
    std::string ring;                      // ambient matrix ring
    std::vector<std::string> coordinates;  // names of the Z-coordinates
    IntegerMatrix hnf_basis;               // rows
    std::string predicate_description;
    std::function<bool(const std::vector<Integer>&)> predicate;
    Integer index;  // Z_p-index in the maximal order M_2(Z_p[i])
    bool contains(const std::vector<Integer>& c) const;  // HNF membership
};

struct PsiReport {
    Integer p;
    bool fv_equals_p = false;
    bool squares_cancel = false;  // psi(F)^2 + psi(V)^2 = 0
    bool frobenius_semilinear = false;
    bool verschiebung_semilinear = false;
    Integer span_index;  // Z-index of the Z[i]-span of psi(V), 1, psi(F), psi(F)^2
    OrderPresentation order;
    bool relations_hold() const {
        return fv_equals_p && squares_cancel && frobenius_semilinear && verschiebung_semilinear;
    }
};
// Throws PreconditionError unless p is a prime with p = 3 mod 4.
PsiReport psi_verify(const Integer& p);

struct EndomorphismOrderReport {
    OrderPresentation order;
    bool hnf_satisfies_predicate = false;
    bool closed_under_multiplication = false;
    long probes = 0;
    long probe_disagreements = 0;
    IntegerMatrix center;        // rows (Re alpha, Im alpha) of central scalars alpha I
    Integer center_index;        // index of the center in Z[i]
    bool center_is_z_ip = false;  // center = Z[i p]
};
EndomorphismOrderReport endomorphism_order_sec9(const Integer& p, long probes = 1000, unsigned long seed = 1);

// A Z-lattice (basis rows in its ambient coordinates) with a reduction map
// onto F_p^f (rows of residue_map act on ambient coordinates mod p).
struct ResidueLattice {
    IntegerMatrix basis;
    IntegerMatrix residue_map;
};

struct FiberProduct {
    IntegerMatrix basis;  // rows in ambient_1 (+) ambient_2 coordinates
    Integer index;        // Z-index in L_1 (+) L_2
    long witt_colength = 0;
};
// { (x, y) in L_1 (+) L_2 : red_1(x) = red_2(y) }. Throws PreconditionError when
// the residue targets differ or a reduction map is not onto.
FiberProduct fiber_product_lattice(const ResidueLattice& l1, const ResidueLattice& l2, const Integer& p,
                                   int witt_degree);

// Lambda_1 = { (a, c) : p | c } with (a, c) -> a and Lambda_2 = o_K^2 with (b, d) -> conj d,
// both in coordinates (Re, Im, Re, Im).
ResidueLattice sec9_lambda1(const Integer& p);
ResidueLattice sec9_lambda2(const Integer& p);

// Action of psi(D_pi) on Lambda_2 / p Lambda_2 = F_(p^2)^2 = F_p^4.
LatticeModP sec9_residue_action(const Integer& p);

struct Sec9Labeling {
    std::string name;
    FiberProduct fiber_product;
};

struct Sec9Example {
    Integer p;
    HondaTateRecord record;
    Integer r_pi_index;  // [Z[i] : R_pi]
    PsiReport psi;
    StableSubspaces stable;
    std::size_t lattice_classes = 0;  // homothety classes of D_pi-lattices
    std::vector<Sec9Labeling> labelings;
    EndomorphismOrderReport s_pi;
};
Sec9Example example_sec9(const Integer& p);

}  // namespace weilkit

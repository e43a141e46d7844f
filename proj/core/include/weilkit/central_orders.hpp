#pragma once

#include <string>
#include <vector>

#include "weilkit/matrix.hpp"
#include "weilkit/weil.hpp"

namespace weilkit {

// The minimal central order R_w = Z[F, V] inside Q[x]/(P_w), F -> x and
// V -> q x^(-1). Elements are coordinate vectors over the basis
// F^d, ..., F, 1, V, ..., V^(d-1) (deg w = 2d) or F^d0, ..., 1, ..., V^d0
// (deg w = 2 d0 + 1).
class CentralOrder {
public:
    using Vec = std::vector<Integer>;

    const WeilSet& weil_set() const { return w_; }
    std::size_t rank() const { return labels_.size(); }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    // Rows: basis elements in the power basis 1, x, ..., x^(n-1).
    const RationalMatrix& basis() const { return basis_; }
    // Coefficient of basis element k in b_i * b_j.
    const Integer& structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
        return table_[(i * rank() + j) * rank() + k];
    }

    Vec one() const { return unit(index_of_one_); }
    Vec frobenius() const;
    Vec verschiebung() const;
    Vec unit(std::size_t i) const;
    Vec multiply(const Vec& a, const Vec& b) const;

    // Power-basis representation of an element of Q[x]/(P_w).
    RatPolynomial to_polynomial(const Vec& a) const;
    // Coordinates of an element of Q[x]/(P_w); may be non-integral.
    std::vector<Rational> coordinates(const RatPolynomial& element) const;
    bool contains(const RatPolynomial& element) const;

    friend CentralOrder build_order(const WeilSet& w);

private:
    WeilSet w_;
    std::vector<std::string> labels_;
    std::vector<int> exponents_;  // i > 0: F^i, 0: 1, i < 0: V^-i
    std::size_t index_of_one_ = 0;
    RationalMatrix basis_;
    RationalMatrix basis_inverse_;
    std::vector<Integer> table_;
};

CentralOrder build_order(const WeilSet& w);

// F and V as elements of Q[x]/(P).
RatPolynomial frobenius_element(const IntPolynomial& P);
RatPolynomial verschiebung_element(const IntPolynomial& P, const Integer& q);

// Checks F V = q and the defining relations from h_w via the multiplication table.
bool verify_relations(const CentralOrder& order);

// [L' : L] for full-rank lattices given by basis rows; throws unless L is
// contained in L'.
Integer lattice_index_in(const RationalMatrix& sub, const RationalMatrix& super);

// [O' : O] for the order O inside the lattice O' spanned by overorder_basis
// (rows in the power basis of Q[x]/(P_w)).
Integer index_in(const CentralOrder& order, const RationalMatrix& overorder_basis);

// Basis of prod_i R_{w_i} embedded in Q[x]/(P_w) by the Chinese remainder
// theorem, for a partition of w into the given parts.
RationalMatrix product_order_basis(const WeilSet& w, const std::vector<WeilSet>& parts);

// Matrix of the reduction R_{w'} -> R_w (columns: images of the basis of R_{w'}).
IntegerMatrix quotient_map(const WeilSet& w, const WeilSet& w_super);

// Partition of w: pi ~ pi' when R_{pi, pi'} has index != 1 in R_pi x R_pi'.
// Components and their members are sorted by minimal polynomial.
std::vector<WeilSet> connected_components(const WeilSet& w);

// Index of R_w inside the product of the orders of the parts.
Integer product_index(const WeilSet& w, const std::vector<WeilSet>& parts);

// Order of the finite ring R_w / (F, V, p): 1 when the point (F, V, p) is not
// on Spec R_w, p otherwise.
Integer frobenius_point_quotient_order(const CentralOrder& order);

// Subset of w (classes given by their polynomials) as a WeilSet.
WeilSet sub_weil_set(const WeilSet& w, const std::vector<IntPolynomial>& polys);

}  // namespace weilkit

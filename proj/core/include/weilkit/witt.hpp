#pragma once

#include <vector>

#include "weilkit/matrix.hpp"
#include "weilkit/padic.hpp"

namespace weilkit {

// W(F_q)/p^k modelled as (Z/p^k)[t]/(m(t)) with m the standard modulus of
// F_q lifted to Z, and sigma the lift of the absolute Frobenius.
class WittRingModel {
public:
    using Element = std::vector<Integer>;  // r coordinates in the basis 1, t, ..., t^(r-1)

    WittRingModel(const Integer& p, int r, long k);

    const PadicContext& context() const { return ctx_; }
    const Integer& p() const { return ctx_.p(); }
    long precision() const { return ctx_.precision(); }
    int degree() const { return r_; }
    const IntPolynomial& modulus() const { return modulus_; }
    const Element& frobenius_image() const { return sigma_t_; }

    Element zero() const { return Element(static_cast<std::size_t>(r_), Integer(0)); }
    Element one() const { return from_integer(Integer(1)); }
    Element t() const;
    Element basis(int i) const;
    Element from_integer(const Integer& a) const;
    Element from_poly(const IntPolynomial& f) const;
    IntPolynomial to_poly(const Element& a) const;

    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element mul(const Element& a, const Element& b) const;
    Element scale(const Integer& s, const Element& a) const;
    Element inv(const Element& a) const;  // throws unless a is a unit
    Element pow(const Element& a, unsigned long e) const;
    bool is_zero(const Element& a) const;
    bool is_unit(const Element& a) const;
    // Smallest valuation among coordinates (precision() for zero).
    long valuation(const Element& a) const;

    Element frobenius(const Element& a) const { return frobenius_power(a, 1); }
    // sigma^i for any integer i (sigma has order r).
    Element frobenius_power(const Element& a, long i) const;
    // Tr(a) = sum sigma^i(a), an element of Z/p^k.
    Integer trace(const Element& a) const;

    // Matrix of sigma^i on the coordinate basis (columns are images of t^j).
    const IntegerMatrix& frobenius_matrix(long i) const;

private:
    Element reduce_poly(const IntPolynomial& f) const;
    PadicContext ctx_;
    int r_;
    IntPolynomial modulus_;
    Element sigma_t_;
    std::vector<IntegerMatrix> sigma_mats_;
};

}  // namespace weilkit

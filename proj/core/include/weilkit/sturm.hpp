#pragma once

#include <vector>

#include "weilkit/polynomial.hpp"

namespace weilkit {

// Exact real number of the form a + b*sqrt(n) with n >= 0.
struct RealPoint {
    Rational a = 0;
    Rational b = 0;
    Integer n = 0;

    static RealPoint rational(const Rational& value) { return {value, 0, 0}; }
    static RealPoint quadratic(const Rational& a, const Rational& b, const Integer& n);
};

// Sign of u + v*sqrt(n).
int sign_of(const Rational& u, const Rational& v, const Integer& n);
int sign_at(const IntPolynomial& p, const RealPoint& x);
int compare(const RealPoint& x, const RealPoint& y);

// Sturm sequence P, P', -rem(...), ... kept primitive with sign-preserving
// scaling. Construction rejects polynomials that are not squarefree.
class SturmSequence {
public:
    explicit SturmSequence(const IntPolynomial& p);

    int variations(const RealPoint& x) const;
    int variations_at_infinity(bool positive) const;
    // Number of distinct real roots in the half-open interval (lo, hi].
    int count(const RealPoint& lo, const RealPoint& hi) const;
    int count_real_roots() const;

    const std::vector<IntPolynomial>& sequence() const { return seq_; }

private:
    std::vector<IntPolynomial> seq_;
};

// Number of real roots of a squarefree polynomial in (a, b].
int sturm_count(const IntPolynomial& p, const Rational& a, const Rational& b);

}  // namespace weilkit

#pragma once

#include "weilkit/polynomial.hpp"

namespace weilkit {

// Res(P, Q) = lc(P)^deg Q * prod_{P(a)=0} Q(a), the Sylvester determinant,
// computed with the subresultant pseudo-remainder sequence.
Integer resultant(const IntPolynomial& p, const IntPolynomial& q);

Integer discriminant(const IntPolynomial& p);

}  // namespace weilkit

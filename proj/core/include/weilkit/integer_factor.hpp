#pragma once

#include <vector>

#include "weilkit/polynomial.hpp"

namespace weilkit {

// Lifts a factorization f = prod(parts) mod p of a monic f, with pairwise
// coprime monic parts, to a factorization modulo p^k. Returned factors are
// monic with coefficients in [0, p^k) and congruent to the parts mod p.
std::vector<IntPolynomial> hensel_lift(const IntPolynomial& f, const std::vector<IntPolynomial>& parts,
                                       const Integer& p, long k);

// True when some prime shows f has no monic factor of the given degree over Z
// (degree patterns modulo up to max_primes good primes); false is inconclusive.
bool excludes_factor_degree(const IntPolynomial& f, int degree, int max_primes = 6);

// Irreducibility over Q of a monic integer polynomial of degree <= 8.
bool is_irreducible_over_q(const IntPolynomial& f);

// Monic irreducible factors over Z of a monic squarefree polynomial (Zassenhaus).
std::vector<IntPolynomial> factor_over_z(const IntPolynomial& f);

}  // namespace weilkit

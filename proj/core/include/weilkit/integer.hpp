#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>

#include "weilkit/errors.hpp"

namespace weilkit {

using Integer = mpz_class;
using Rational = mpq_class;

Integer ipow(const Integer& base, unsigned long exp);

// v_p(n) for n != 0.
long valuation(const Integer& n, const Integer& p);
long valuation(const Rational& x, const Integer& p);

bool is_prime(const Integer& n);

// Returns (p, r) with q = p^r, or nullopt if q is not a prime power.
std::optional<std::pair<Integer, int>> prime_power(const Integer& q);

Integer isqrt(const Integer& n);
bool is_square(const Integer& n);
Integer binomial(unsigned long n, unsigned long k);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

// Canonical residue in [0, m).
Integer mod(const Integer& a, const Integer& m);
// Symmetric residue in (-m/2, m/2].
Integer sym_mod(const Integer& a, const Integer& m);
// Throws if a is not invertible modulo m.
Integer inverse_mod(const Integer& a, const Integer& m);

inline int sign(const Integer& a) { return sgn(a); }
inline int sign(const Rational& a) { return sgn(a); }

std::string to_string(const Integer& a);
std::string to_string(const Rational& a);

// Parses a decimal integer, rejecting anything else (including empty strings).
Integer parse_integer(const std::string& text);

}  // namespace weilkit

#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "weilkit/polynomial.hpp"

namespace weilkit {

// Polynomial over F_p with machine-word coefficients in [0, p); p < 2^31.
class FpPolynomial {
public:
    FpPolynomial() = default;
    FpPolynomial(std::int64_t p, std::vector<std::int64_t> coefficients);
    static FpPolynomial from_integer(const IntPolynomial& f, std::int64_t p);
    static FpPolynomial monomial(std::int64_t p, std::int64_t c, int degree);

    std::int64_t prime() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    const std::vector<std::int64_t>& coefficients() const { return c_; }
    std::int64_t coeff(int i) const { return (i < 0 || i > degree()) ? 0 : c_[static_cast<std::size_t>(i)]; }
    std::int64_t leading() const { return c_.empty() ? 0 : c_.back(); }

    FpPolynomial operator+(const FpPolynomial& o) const;
    FpPolynomial operator-(const FpPolynomial& o) const;
    FpPolynomial operator*(const FpPolynomial& o) const;
    FpPolynomial scaled(std::int64_t s) const;
    FpPolynomial monic() const;
    FpPolynomial derivative() const;
    std::pair<FpPolynomial, FpPolynomial> divmod(const FpPolynomial& d) const;
    FpPolynomial operator%(const FpPolynomial& d) const { return divmod(d).second; }
    FpPolynomial operator/(const FpPolynomial& d) const { return divmod(d).first; }
    bool operator==(const FpPolynomial& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const FpPolynomial& o) const { return !(*this == o); }
    // Degree first, then coefficients lexicographically (constant first).
    bool operator<(const FpPolynomial& o) const;

    // Lifts to Z with coefficients in [0, p).
    IntPolynomial to_integer() const;

private:
    void trim();
    std::int64_t p_ = 2;
    std::vector<std::int64_t> c_;
};

std::int64_t inverse_mod_p(std::int64_t a, std::int64_t p);
FpPolynomial gcd(const FpPolynomial& a, const FpPolynomial& b);
// Extended gcd: s*a + t*b = g with g monic.
void xgcd(const FpPolynomial& a, const FpPolynomial& b, FpPolynomial& g, FpPolynomial& s, FpPolynomial& t);
FpPolynomial powmod(const FpPolynomial& base, const Integer& exp, const FpPolynomial& modulus);

using FpFactorization = std::vector<std::pair<FpPolynomial, int>>;

FpFactorization squarefree_factorization(const FpPolynomial& f);
// Distinct-degree factorization of a squarefree monic polynomial: (product, degree).
std::vector<std::pair<FpPolynomial, int>> distinct_degree_factorization(const FpPolynomial& f);
// Splits a squarefree monic product of irreducibles of common degree d.
std::vector<FpPolynomial> equal_degree_factorization(const FpPolynomial& f, int d);
bool is_irreducible(const FpPolynomial& f);

// Monic irreducible factors with multiplicities, sorted. The leading
// coefficient is dropped (the product equals the input up to a unit).
FpFactorization factor_over_prime_field(const IntPolynomial& f, const Integer& p);
FpFactorization factor(const FpPolynomial& f);

// F_{p^n} = F_p[t]/(m) with m monic irreducible of degree n.
class FiniteField {
public:
    using Element = std::vector<std::int64_t>;  // n coordinates in the power basis

    explicit FiniteField(FpPolynomial modulus);
    // The lexicographically smallest monic irreducible of degree n, comparing
    // coefficient vectors (c_0, ..., c_{n-1}).
    static FiniteField standard(std::int64_t p, int n);
    static FpPolynomial standard_modulus(std::int64_t p, int n);

    std::int64_t characteristic() const { return modulus_.prime(); }
    int degree() const { return modulus_.degree(); }
    Integer order() const;
    const FpPolynomial& modulus() const { return modulus_; }

    Element zero() const { return Element(static_cast<std::size_t>(degree()), 0); }
    Element one() const;
    Element generator() const;  // the class of t
    Element from_poly(const FpPolynomial& f) const;
    FpPolynomial to_poly(const Element& a) const;
    Element embed(std::int64_t c) const;

    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element mul(const Element& a, const Element& b) const;
    Element inv(const Element& a) const;
    Element pow(const Element& a, const Integer& e) const;
    Element frobenius(const Element& a) const { return pow(a, Integer(characteristic())); }
    bool is_zero(const Element& a) const;

private:
    FpPolynomial modulus_;
};

// Polynomial over a finite field, constant first.
class FqPolynomial {
public:
    FqPolynomial(std::shared_ptr<const FiniteField> field, std::vector<FiniteField::Element> coefficients);

    const FiniteField& field() const { return *field_; }
    const std::shared_ptr<const FiniteField>& field_ptr() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<FiniteField::Element>& coefficients() const { return c_; }

    FqPolynomial operator+(const FqPolynomial& o) const;
    FqPolynomial operator-(const FqPolynomial& o) const;
    FqPolynomial operator*(const FqPolynomial& o) const;
    FqPolynomial derivative() const;
    FqPolynomial monic() const;
    std::pair<FqPolynomial, FqPolynomial> divmod(const FqPolynomial& d) const;

    bool is_squarefree() const;
    // Degrees of the irreducible factors of a squarefree polynomial, sorted.
    std::vector<int> factor_degrees() const;

private:
    void trim();
    std::shared_ptr<const FiniteField> field_;
    std::vector<FiniteField::Element> c_;
};

FqPolynomial gcd(const FqPolynomial& a, const FqPolynomial& b);

}  // namespace weilkit

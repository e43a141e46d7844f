#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weilkit/padic.hpp"
#include "weilkit/polynomial.hpp"

namespace weilkit {

// q = p^r.
struct GlobalContext {
    Integer p;
    int r = 1;
    Integer q;

    static GlobalContext from_pr(const Integer& p, int r);
    static GlobalContext from_q(const Integer& q);  // throws unless q is a prime power
    // p^(r/2) for even r.
    Integer sqrt_q() const;
    friend bool operator==(const GlobalContext& a, const GlobalContext& b) { return a.q == b.q; }
};

// Conjugacy class of Weil q-numbers, keyed by its minimal polynomial.
struct WeilClass {
    GlobalContext context;
    IntPolynomial poly;
    bool is_real = false;

    int degree() const { return poly.degree(); }
    // deg/2 for non-real classes; 0 for real ones.
    int half_degree() const { return is_real ? 0 : poly.degree() / 2; }
    friend bool operator==(const WeilClass& a, const WeilClass& b) {
        return a.context == b.context && a.poly == b.poly;
    }
};

enum class Rejection { reducible, functional_equation_fails, real_root_outside_bound, real_but_not_sqrt_q };
std::string to_string(Rejection r);

struct Validation {
    std::optional<WeilClass> weil_class;
    std::optional<Rejection> rejection;
    bool accepted() const { return weil_class.has_value(); }
};

// Throws PreconditionError for non-monic input.
Validation validate_weil(const IntPolynomial& poly, const GlobalContext& ctx);

// Q with P(x) = x^d Q(x + q/x) for a polynomial of degree 2d satisfying the
// functional equation.
IntPolynomial trace_polynomial(const IntPolynomial& poly, const Integer& q);
// Inverse map: x^d Q(x + q/x).
IntPolynomial from_trace_polynomial(const IntPolynomial& trace, const Integer& q);

// Element of Z[F^(1/2), V^(1/2)]; keys are doubled exponents (a, b) for F^(a/2) V^(b/2).
class SymmetricPolynomial {
public:
    using Key = std::pair<int, int>;

    SymmetricPolynomial() = default;
    explicit SymmetricPolynomial(std::map<Key, Integer> terms);
    static SymmetricPolynomial constant(const Integer& c);

    const std::map<Key, Integer>& terms() const { return terms_; }
    Integer coeff(int a2, int b2) const;
    bool has_half_exponents() const;

    SymmetricPolynomial operator*(const SymmetricPolynomial& o) const;
    SymmetricPolynomial operator+(const SymmetricPolynomial& o) const;
    friend bool operator==(const SymmetricPolynomial& a, const SymmetricPolynomial& b) { return a.terms_ == b.terms_; }

    // x^(deg/2) h(x, q/x) as a polynomial in x; throws if it is not one.
    IntPolynomial substitute(const Integer& q, int degree) const;
    std::string to_string() const;

private:
    std::map<Key, Integer> terms_;
};

SymmetricPolynomial symmetric_polynomial(const WeilClass& c);

// Finite set w of pairwise non-conjugate classes over one context.
struct WeilSet {
    GlobalContext context;
    std::vector<WeilClass> classes;
    IntPolynomial P;
    SymmetricPolynomial h;
    int degree = 0;
};
WeilSet make_weil_set(std::vector<WeilClass> classes);

enum class SlopeType { ordinary, supersingular, mixed };
std::string to_string(SlopeType s);

struct SlopeInfo {
    SlopeType type;
    std::vector<Rational> slopes;  // ascending, with multiplicity
};
SlopeInfo slope_type(const WeilClass& c);

// Calls visit on each class of degree <= max_degree in the canonical order.
void for_each_weil(const GlobalContext& ctx, int max_degree, const std::function<void(const WeilClass&)>& visit);
// Complete, sorted by (degree, coefficients) with real classes included.
std::vector<WeilClass> enumerate_weil(const GlobalContext& ctx, int max_degree);

// Real classes of the context: x - p^m, x + p^m (r even) or x^2 - q (r odd).
std::vector<WeilClass> real_classes(const GlobalContext& ctx);

}  // namespace weilkit

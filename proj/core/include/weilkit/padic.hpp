#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weilkit/polynomial.hpp"

namespace weilkit {

// Residues modulo p^k.
class PadicContext {
public:
    PadicContext(Integer p, long k);

    const Integer& p() const { return p_; }
    long precision() const { return k_; }
    const Integer& modulus() const { return pk_; }
    Integer reduce(const Integer& a) const { return mod(a, pk_); }
    // nullopt when a == 0 mod p^k (valuation >= k).
    std::optional<long> valuation(const Integer& a) const;

private:
    Integer p_;
    long k_;
    Integer pk_;
};

struct NewtonSegment {
    Rational slope;  // common p-adic valuation of the roots on this segment
    long length = 0;
};

struct NewtonPolygon {
    std::vector<std::pair<long, long>> vertices;  // (index, valuation), left to right
    std::vector<NewtonSegment> segments;          // left to right (slopes decreasing)
    // Root valuations with multiplicity, ascending.
    std::vector<Rational> root_valuations() const;
};

NewtonPolygon newton_polygon(const IntPolynomial& poly, const Integer& p);

// Lifts a coprime factorization mod p of a monic polynomial to Z/p^k.
std::vector<IntPolynomial> hensel_split(const IntPolynomial& poly, const std::vector<IntPolynomial>& parts_mod_p,
                                        const PadicContext& ctx);

struct PlaceAboveP {
    int e = 1;
    int f = 1;
    Rational root_valuation;  // v_p(pi) with v_p(p) = 1
    Rational invariant;       // in [0, 1)
    int degree() const { return e * f; }
    friend bool operator==(const PlaceAboveP& a, const PlaceAboveP& b) {
        return a.e == b.e && a.f == b.f && a.root_valuation == b.root_valuation && a.invariant == b.invariant;
    }
};

// inv = frac(e f v / r)
Rational local_invariant(int e, int f, const Rational& root_valuation, int r);

// User-supplied place data for classes the order-one residual test cannot
// resolve, keyed by (wire polynomial, p).
class PlaceOverrides {
public:
    void add(const IntPolynomial& poly, const Integer& p, std::vector<PlaceAboveP> places);
    const std::vector<PlaceAboveP>* find(const IntPolynomial& poly, const Integer& p) const;
    bool empty() const { return table_.empty(); }
    // JSON list of {poly, p, places:[{e, f, val_num, val_den}]}.
    static PlaceOverrides from_json(const std::string& text);

private:
    std::map<std::pair<std::string, std::string>, std::vector<PlaceAboveP>> table_;
};

// Raised when a residual polynomial is not squarefree. Carries the places
// resolved so far and a description of the unresolved part.
class IrregularPlaces : public Error {
public:
    IrregularPlaces(std::string message, std::vector<PlaceAboveP> partial, int unresolved_degree)
        : Error(std::move(message)), partial_(std::move(partial)), unresolved_degree_(unresolved_degree) {}
    const std::vector<PlaceAboveP>& partial() const { return partial_; }
    int unresolved_degree() const { return unresolved_degree_; }

private:
    std::vector<PlaceAboveP> partial_;
    int unresolved_degree_;
};

struct DecomposeOptions {
    const PlaceOverrides* overrides = nullptr;
    // Fall back to the p-maximal order when the residual polynomial test is
    // inconclusive; when false the IrregularPlaces error propagates.
    bool resolve_irregular = true;
};

// Places above p from the p-maximal order of Z[x]/(poly). Slower than the
// residual polynomial route but never inconclusive.
std::vector<PlaceAboveP> places_via_maximal_order(const IntPolynomial& poly, const Integer& p, int r);

// Places of Q(pi) above p for an irreducible monic poly, sorted by
// (root valuation, e, f). Works with exact phi-adic expansions of poly, so no
// p-adic precision is involved.
std::vector<PlaceAboveP> decompose_places(const IntPolynomial& poly, const Integer& p, int r,
                                          const DecomposeOptions& options = {});

}  // namespace weilkit

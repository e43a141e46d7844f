#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "weilkit/integer.hpp"

namespace weilkit {

namespace detail {

inline Integer exact_quotient(const Integer& a, const Integer& b) {
    if (b == 0) throw Error("division by zero");
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) {
        throw Error("inexact integer division in polynomial arithmetic");
    }
    Integer out;
    mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline Rational exact_quotient(const Rational& a, const Rational& b) {
    if (b == 0) throw Error("division by zero");
    return a / b;
}

}  // namespace detail

// Dense univariate polynomial, constant term first. The zero polynomial has
// an empty coefficient vector and degree -1.
template <class T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coefficients) : c_(std::move(coefficients)) { trim(); }
    Polynomial(std::initializer_list<T> coefficients) : c_(coefficients) { trim(); }

    static Polynomial constant(const T& value) { return Polynomial(std::vector<T>{value}); }
    static Polynomial monomial(const T& value, int degree) {
        std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
        c.back() = value;
        return Polynomial(std::move(c));
    }
    static Polynomial x() { return monomial(T(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coefficients() const { return c_; }
    T coeff(int i) const {
        return (i < 0 || i > degree()) ? T(0) : c_[static_cast<std::size_t>(i)];
    }
    const T& leading() const {
        if (c_.empty()) throw Error("leading coefficient of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool is_constant() const { return degree() <= 0; }

    void set_coeff(int i, const T& value) {
        if (i > degree()) c_.resize(static_cast<std::size_t>(i) + 1, T(0));
        c_[static_cast<std::size_t>(i)] = value;
        trim();
    }

    Polynomial operator-() const {
        Polynomial out = *this;
        for (auto& a : out.c_) a = -a;
        return out;
    }
    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator*=(const T& s) {
        for (auto& a : c_) a *= s;
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
    friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(out));
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // Ordering by degree, then coefficient vector lexicographically (constant first).
    friend bool operator<(const Polynomial& a, const Polynomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
    }

    template <class U>
    U evaluate(const U& at) const {
        U acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + U(*it);
        return acc;
    }
    T operator()(const T& at) const { return evaluate<T>(at); }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<T> out(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * T(static_cast<long>(i));
        return Polynomial(std::move(out));
    }

    // this(inner(x))
    Polynomial compose(const Polynomial& inner) const {
        Polynomial acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
        return acc;
    }

    // x^deg * this(1/x)
    Polynomial reversed(int deg) const {
        std::vector<T> out(static_cast<std::size_t>(deg) + 1, T(0));
        for (int i = 0; i <= degree(); ++i) out[static_cast<std::size_t>(deg - i)] = c_[static_cast<std::size_t>(i)];
        return Polynomial(std::move(out));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<T> c_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

// Quotient and remainder; the leading coefficient of the divisor must divide
// exactly wherever it is used (always true over a field or for monic divisors).
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> divmod(const Polynomial<T>& a, const Polynomial<T>& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    std::vector<T> rem = a.coefficients();
    const int db = b.degree();
    if (a.degree() < db) return {Polynomial<T>(), a};
    std::vector<T> quo(static_cast<std::size_t>(a.degree() - db) + 1, T(0));
    const T& lb = b.leading();
    for (int i = a.degree(); i >= db; --i) {
        T& top = rem[static_cast<std::size_t>(i)];
        if (top == 0) continue;
        T f = detail::exact_quotient(top, lb);
        quo[static_cast<std::size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b.coeff(j);
    }
    return {Polynomial<T>(std::move(quo)), Polynomial<T>(std::move(rem))};
}

template <class T>
Polynomial<T> operator%(const Polynomial<T>& a, const Polynomial<T>& b) {
    return divmod(a, b).second;
}

// Throws unless b divides a exactly.
template <class T>
Polynomial<T> exact_divide(const Polynomial<T>& a, const Polynomial<T>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw Error("polynomial division is not exact");
    return q;
}

RatPolynomial to_rational(const IntPolynomial& p);
Integer content(const IntPolynomial& p);
IntPolynomial primitive_part(const IntPolynomial& p);
// Clears denominators and content; the result has positive leading coefficient.
IntPolynomial primitive_part(const RatPolynomial& p);

// Monic gcd over Q (zero if both inputs vanish).
RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b);
// Primitive gcd over Z with positive leading coefficient.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);
bool is_squarefree(const IntPolynomial& p);

// Coefficients reduced into [0, m).
IntPolynomial reduce_mod(const IntPolynomial& p, const Integer& m);

// Remainder modulo a monic polynomial, then coefficients reduced mod m.
IntPolynomial rem_mod(const IntPolynomial& a, const IntPolynomial& monic, const Integer& m);

// Wire format: comma separated integers, constant term first ("32,-2,1").
IntPolynomial parse_polynomial(const std::string& text);
std::string to_wire(const IntPolynomial& p);
// Human readable form in the given variable, highest degree first.
std::string to_string(const IntPolynomial& p, const std::string& var = "x");
std::string to_string(const RatPolynomial& p, const std::string& var = "x");

}  // namespace weilkit

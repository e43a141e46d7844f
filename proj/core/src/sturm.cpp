#include "weilkit/sturm.hpp"

namespace weilkit {

namespace {

// Scales by a positive rational so the result is a primitive integer polynomial.
IntPolynomial positive_primitive(const RatPolynomial& p) {
    IntPolynomial q = primitive_part(p);  // positive leading coefficient
    if (!p.is_zero() && p.leading() < 0) q = -q;
    return q;
}

int count_changes(const std::vector<int>& signs) {
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

RealPoint RealPoint::quadratic(const Rational& a, const Rational& b, const Integer& n) {
    if (n < 0) throw Error("quadratic point needs a nonnegative radicand");
    if (is_square(n)) return rational(a + b * Rational(isqrt(n)));
    return {a, b, n};
}

int sign_of(const Rational& u, const Rational& v, const Integer& n) {
    int su = sgn(u), sv = (n == 0) ? 0 : sgn(v);
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    Rational lhs = u * u, rhs = v * v * Rational(n);
    if (lhs == rhs) return 0;
    return lhs > rhs ? su : sv;
}

int sign_at(const IntPolynomial& p, const RealPoint& x) {
    if (x.b == 0 || x.n == 0) {
        Rational acc = 0;
        for (int i = p.degree(); i >= 0; --i) acc = acc * x.a + Rational(p.coeff(i));
        return sgn(acc);
    }
    Rational u = 0, v = 0;
    const Rational nn(x.n);
    for (int i = p.degree(); i >= 0; --i) {
        Rational nu = u * x.a + v * x.b * nn + Rational(p.coeff(i));
        Rational nv = u * x.b + v * x.a;
        u = std::move(nu);
        v = std::move(nv);
    }
    return sign_of(u, v, x.n);
}

int compare(const RealPoint& x, const RealPoint& y) {
    // (x.a - y.a) + x.b sqrt(x.n) - y.b sqrt(y.n)
    if (x.n == y.n || x.b == 0 || y.b == 0) {
        if (x.b == 0 && y.b == 0) return sgn(x.a - y.a);
        if (x.b == 0) return -sign_of(y.a - x.a, y.b, y.n);
        if (y.b == 0) return sign_of(x.a - y.a, x.b, x.n);
        return sign_of(x.a - y.a, x.b - y.b, x.n);
    }
    throw Error("comparison of points with different radicands is not supported");
}

SturmSequence::SturmSequence(const IntPolynomial& p) {
    if (p.degree() < 1) throw Error("Sturm sequence needs a nonconstant polynomial");
    seq_.push_back(p);
    seq_.push_back(positive_primitive(to_rational(p.derivative())));
    while (true) {
        const IntPolynomial& a = seq_[seq_.size() - 2];
        const IntPolynomial& b = seq_.back();
        if (b.degree() <= 0) break;
        RatPolynomial r = divmod(to_rational(a), to_rational(b)).second;
        if (r.is_zero()) throw Error("squarefree required");
        seq_.push_back(positive_primitive(-r));
    }
}

int SturmSequence::variations(const RealPoint& x) const {
    std::vector<int> signs;
    signs.reserve(seq_.size());
    for (const auto& s : seq_) signs.push_back(sign_at(s, x));
    return count_changes(signs);
}

int SturmSequence::variations_at_infinity(bool positive) const {
    std::vector<int> signs;
    for (const auto& s : seq_) {
        int lc = sgn(s.leading());
        signs.push_back((positive || s.degree() % 2 == 0) ? lc : -lc);
    }
    return count_changes(signs);
}

int SturmSequence::count(const RealPoint& lo, const RealPoint& hi) const {
    if (compare(lo, hi) >= 0) throw Error("Sturm interval must satisfy a < b");
    return variations(lo) - variations(hi);
}

int SturmSequence::count_real_roots() const {
    return variations_at_infinity(false) - variations_at_infinity(true);
}

int sturm_count(const IntPolynomial& p, const Rational& a, const Rational& b) {
    if (!(a < b)) throw Error("Sturm interval must satisfy a < b");
    SturmSequence s(p);
    return s.count(RealPoint::rational(a), RealPoint::rational(b));
}

}  // namespace weilkit

#include "weilkit/witt.hpp"

#include "weilkit/finite_field.hpp"

namespace weilkit {

WittRingModel::WittRingModel(const Integer& p, int r, long k) : ctx_(p, k), r_(r) {
    if (r < 1) throw Error("Witt ring degree must be positive");
    if (!p.fits_slong_p() || p >= Integer(1L << 31)) throw Error("prime too large for the Witt ring model");
    modulus_ = FiniteField::standard_modulus(p.get_si(), r).to_integer();

    // sigma(t): Newton iteration for the root of m congruent to t^p mod p.
    Element s = pow(t(), p.get_ui());
    const IntPolynomial dm = modulus_.derivative();
    auto eval = [&](const IntPolynomial& f, const Element& x) {
        Element acc = zero();
        for (int i = f.degree(); i >= 0; --i) acc = add(mul(acc, x), from_integer(f.coeff(i)));
        return acc;
    };
    for (int iter = 0; iter < 80; ++iter) {
        Element val = eval(modulus_, s);
        if (is_zero(val)) break;
        s = sub(s, mul(val, inv(eval(dm, s))));
    }
    if (!is_zero(eval(modulus_, s))) throw Error("Frobenius lift did not converge");
    sigma_t_ = s;

    IntegerMatrix m1(static_cast<std::size_t>(r_), static_cast<std::size_t>(r_));
    Element col = one();
    for (int j = 0; j < r_; ++j) {
        for (int i = 0; i < r_; ++i) m1(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = col[static_cast<std::size_t>(i)];
        col = mul(col, sigma_t_);
    }
    sigma_mats_.push_back(IntegerMatrix::identity(static_cast<std::size_t>(r_)));
    for (int i = 1; i < r_; ++i) {
        IntegerMatrix next = m1 * sigma_mats_.back();
        for (std::size_t a = 0; a < next.rows(); ++a)
            for (std::size_t b = 0; b < next.cols(); ++b) next(a, b) = ctx_.reduce(next(a, b));
        sigma_mats_.push_back(next);
    }
}

WittRingModel::Element WittRingModel::t() const { return reduce_poly(IntPolynomial::x()); }

WittRingModel::Element WittRingModel::basis(int i) const {
    if (i >= r_) return reduce_poly(IntPolynomial::monomial(Integer(1), i));
    Element e = zero();
    e[static_cast<std::size_t>(i)] = 1;
    return e;
}

WittRingModel::Element WittRingModel::from_integer(const Integer& a) const {
    Element e = zero();
    e[0] = ctx_.reduce(a);
    return e;
}

WittRingModel::Element WittRingModel::reduce_poly(const IntPolynomial& f) const {
    IntPolynomial red = rem_mod(f, modulus_, ctx_.modulus());
    Element e = zero();
    for (int i = 0; i <= red.degree(); ++i) e[static_cast<std::size_t>(i)] = red.coeff(i);
    return e;
}

WittRingModel::Element WittRingModel::from_poly(const IntPolynomial& f) const { return reduce_poly(f); }

IntPolynomial WittRingModel::to_poly(const Element& a) const { return IntPolynomial(a); }

WittRingModel::Element WittRingModel::add(const Element& a, const Element& b) const {
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = ctx_.reduce(a[i] + b[i]);
    return out;
}

WittRingModel::Element WittRingModel::sub(const Element& a, const Element& b) const {
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = ctx_.reduce(a[i] - b[i]);
    return out;
}

WittRingModel::Element WittRingModel::neg(const Element& a) const { return sub(zero(), a); }

WittRingModel::Element WittRingModel::mul(const Element& a, const Element& b) const {
    if (r_ == 1) return {ctx_.reduce(a[0] * b[0])};
    std::vector<Integer> prod(static_cast<std::size_t>(2 * r_ - 1), Integer(0));
    for (int i = 0; i < r_; ++i) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < r_; ++j) prod[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
    return reduce_poly(IntPolynomial(prod));
}

WittRingModel::Element WittRingModel::scale(const Integer& s, const Element& a) const {
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = ctx_.reduce(s * a[i]);
    return out;
}

bool WittRingModel::is_zero(const Element& a) const {
    for (const auto& v : a)
        if (ctx_.reduce(v) != 0) return false;
    return true;
}

bool WittRingModel::is_unit(const Element& a) const {
    for (const auto& v : a)
        if (mod(v, ctx_.p()) != 0) return true;
    return false;
}

long WittRingModel::valuation(const Element& a) const {
    long best = ctx_.precision();
    for (const auto& v : a) {
        auto x = ctx_.valuation(v);
        if (x && *x < best) best = *x;
    }
    return best;
}

WittRingModel::Element WittRingModel::inv(const Element& a) const {
    if (!is_unit(a)) throw Error("Witt ring element is not a unit");
    // Invert modulo p in F_q, then Newton: b <- b (2 - a b).
    FiniteField field(FpPolynomial::from_integer(modulus_, ctx_.p().get_si()));
    FiniteField::Element abar(static_cast<std::size_t>(r_));
    for (int i = 0; i < r_; ++i) abar[static_cast<std::size_t>(i)] = mod(a[static_cast<std::size_t>(i)], ctx_.p()).get_si();
    FiniteField::Element bbar = field.inv(abar);
    Element b = zero();
    for (int i = 0; i < r_; ++i) b[static_cast<std::size_t>(i)] = bbar[static_cast<std::size_t>(i)];
    const Element two = from_integer(Integer(2));
    for (long prec = 1; prec < ctx_.precision(); prec *= 2) b = mul(b, sub(two, mul(a, b)));
    return b;
}

WittRingModel::Element WittRingModel::pow(const Element& a, unsigned long e) const {
    Element result = one(), base = a;
    while (e) {
        if (e & 1UL) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

const IntegerMatrix& WittRingModel::frobenius_matrix(long i) const {
    long j = i % r_;
    if (j < 0) j += r_;
    return sigma_mats_[static_cast<std::size_t>(j)];
}

WittRingModel::Element WittRingModel::frobenius_power(const Element& a, long i) const {
    if (r_ == 1) return a;
    Element out = frobenius_matrix(i).apply(a);
    for (auto& v : out) v = ctx_.reduce(v);
    return out;
}

Integer WittRingModel::trace(const Element& a) const {
    Element acc = zero();
    for (int i = 0; i < r_; ++i) acc = add(acc, frobenius_power(a, i));
    for (int i = 1; i < r_; ++i)
        if (acc[static_cast<std::size_t>(i)] != 0) throw Error("trace left the base ring (precision loss)");
    return acc[0];
}

}  // namespace weilkit

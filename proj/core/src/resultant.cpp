#include "weilkit/resultant.hpp"

namespace weilkit {

namespace {

// lc(B)^(deg A - deg B + 1) * A mod B, exact over Z.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Integer> r = a.coefficients();
    const int db = b.degree();
    const Integer& lb = b.leading();
    // One multiplication by lc per step, so the factor is lc^(delta+1).
    for (int i = a.degree(); i >= db; --i) {
        Integer top = r[static_cast<std::size_t>(i)];
        for (auto& v : r) v *= lb;
        if (top == 0) continue;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= top * b.coeff(j);
    }
    return IntPolynomial(std::move(r));
}

IntPolynomial divide_all(const IntPolynomial& p, const Integer& d) {
    std::vector<Integer> c = p.coefficients();
    for (auto& v : c) v = detail::exact_quotient(v, d);
    return IntPolynomial(std::move(c));
}

}  // namespace

Integer resultant(const IntPolynomial& p, const IntPolynomial& q) {
    if (p.is_zero() || q.is_zero()) throw Error("resultant of the zero polynomial");
    IntPolynomial a = p, b = q;
    Integer ca = content(a), cb = content(b);
    if (ca < 0) ca = -ca;
    if (cb < 0) cb = -cb;
    a = divide_all(a, ca);
    b = divide_all(b, cb);
    Integer t = ipow(ca, static_cast<unsigned long>(b.degree())) * ipow(cb, static_cast<unsigned long>(a.degree()));
    int s = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -1;
    }
    if (b.degree() == 0) {
        return s * t * ipow(b.leading(), static_cast<unsigned long>(a.degree()));
    }
    Integer g = 1, h = 1;
    while (true) {
        int delta = a.degree() - b.degree();
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
        IntPolynomial r = pseudo_remainder(a, b);
        a = b;
        if (r.is_zero()) return 0;
        b = divide_all(r, g * ipow(h, static_cast<unsigned long>(delta)));
        g = a.leading();
        // h <- h^(1-delta) g^delta
        if (delta == 0) {
            // h unchanged
        } else {
            h = detail::exact_quotient(ipow(g, static_cast<unsigned long>(delta)),
                                       ipow(h, static_cast<unsigned long>(delta - 1)));
        }
        if (b.degree() <= 0) break;
    }
    // h <- h^(1 - deg A) lc(B)^deg A
    int da = a.degree();
    Integer lb = b.leading();
    Integer out;
    if (da == 0) {
        out = h;
    } else {
        out = detail::exact_quotient(ipow(lb, static_cast<unsigned long>(da)), ipow(h, static_cast<unsigned long>(da - 1)));
    }
    return s * t * out;
}

Integer discriminant(const IntPolynomial& p) {
    int n = p.degree();
    if (n < 1) throw Error("discriminant of a constant");
    Integer r = resultant(p, p.derivative());
    Integer d = detail::exact_quotient(r, p.leading());
    // (-1)^(n(n-1)/2)
    if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) d = -d;
    return d;
}

}  // namespace weilkit

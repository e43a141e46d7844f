#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include "weilkit/integer_factor.hpp"
#include "weilkit/sturm.hpp"
#include "weilkit/weil.hpp"

// Enumeration of totally real trace polynomials Q with roots in (-2 sqrt q, 2 sqrt q).
// Coefficients are fixed from the top down; the (d-k)-th derivative of Q is a
// degree-k polynomial whose roots interlace those of the next derivative, which
// confines each new coefficient to an interval. Floating point only prunes
// (with slack); every survivor is checked exactly.

namespace weilkit {
namespace {

using Real = long double;

class TraceEnumerator {
public:
    TraceEnumerator(const GlobalContext& ctx, int d, const std::function<void(const WeilClass&)>& visit)
        : ctx_(ctx), d_(d), visit_(visit), c_(static_cast<std::size_t>(d) + 1, 0), roots_(static_cast<std::size_t>(d) + 1) {
        bound_ = 2.0L * std::sqrt(static_cast<Real>(ctx.q.get_d()));
        fact_[0] = 1;
        for (int i = 1; i < 12; ++i) fact_[i] = fact_[i - 1] * i;
        c_[static_cast<std::size_t>(d)] = 1;
        lo_ = RealPoint::quadratic(0, -2, ctx.q);
        hi_ = RealPoint::quadratic(0, 2, ctx.q);
        // 128-bit arithmetic suffices for small q and d <= 4.
        fast_ = ctx.q <= Integer(1L << 16) && d <= 4;
        if (ctx.r % 2 == 0) root_q_ = ctx.sqrt_q().get_si();
    }

    void run() { descend(1); }

private:
    // Coefficient of y^j in D_k = Q^(d-k), for j >= 1.
    Real derivative_coeff(int k, int j) const {
        const int i = j + d_ - k;
        return static_cast<Real>(c_[static_cast<std::size_t>(i)]) * fact_[i] / fact_[j];
    }

    // D_k at y with the constant term left out.
    Real partial_value(int k, Real y) const {
        Real acc = 0;
        for (int j = k; j >= 1; --j) acc = (acc + derivative_coeff(k, j)) * y;
        return acc;
    }

    Real value(int k, Real y) const {
        return partial_value(k, y) + static_cast<Real>(c_[static_cast<std::size_t>(d_ - k)]) * fact_[d_ - k];
    }

    void descend(int k) {
        // Admissible range for the constant term c of D_k.
        const std::vector<Real>& prev = roots_[static_cast<std::size_t>(k - 1)];
        Real lo = -partial_value(k, bound_);
        Real hi = HUGE_VALL;
        auto constrain = [&](Real y, bool lower) {
            Real v = -partial_value(k, y);
            if (lower) {
                lo = std::max(lo, v);
            } else {
                hi = std::min(hi, v);
            }
        };
        constrain(-bound_, k % 2 == 0);
        for (int j = 1; j <= k - 1; ++j) constrain(prev[static_cast<std::size_t>(j - 1)], (k - j) % 2 == 0);
        const Real scale = fact_[d_ - k];
        const Real slack = 1e-9L * (1 + std::fabs(lo) + std::fabs(hi));
        if (lo - slack > hi + slack) return;
        const auto first = static_cast<std::int64_t>(std::ceil((lo - slack) / scale));
        const auto last = static_cast<std::int64_t>(std::floor((hi + slack) / scale));
        for (std::int64_t c = first; c <= last; ++c) {
            c_[static_cast<std::size_t>(d_ - k)] = c;
            find_roots(k);
            if (k == d_) {
                leaf();
            } else {
                descend(k + 1);
            }
        }
    }

    void find_roots(int k) {
        const std::vector<Real>& prev = roots_[static_cast<std::size_t>(k - 1)];
        std::vector<Real>& out = roots_[static_cast<std::size_t>(k)];
        out.resize(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) {
            Real a = j == 0 ? -bound_ : prev[static_cast<std::size_t>(j - 1)];
            Real b = j == k - 1 ? bound_ : prev[static_cast<std::size_t>(j)];
            Real fa = value(k, a), fb = value(k, b);
            if ((fa > 0) == (fb > 0) || fa == 0 || fb == 0) {
                out[static_cast<std::size_t>(j)] = std::fabs(fa) < std::fabs(fb) ? a : b;
                continue;
            }
            for (int it = 0; it < 80 && b - a > 1e-15L * (1 + std::fabs(a)); ++it) {
                Real m = (a + b) / 2;
                Real fm = value(k, m);
                if ((fm > 0) == (fa > 0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out[static_cast<std::size_t>(j)] = (a + b) / 2;
        }
    }

    IntPolynomial trace() const {
        std::vector<Integer> v;
        for (auto x : c_) v.emplace_back(static_cast<long>(x));
        return IntPolynomial(v);
    }

    using Wide = __int128;

    // Horner evaluation of Q at a long double point, with a sign only when the
    // rounding error bound certifies it.
    int certified_sign(Real t) const {
        Real acc = 0, mag = 0;
        const Real at = std::fabs(t);
        for (int i = d_; i >= 0; --i) {
            acc = acc * t + static_cast<Real>(c_[static_cast<std::size_t>(i)]);
            mag = mag * at + std::fabs(static_cast<Real>(c_[static_cast<std::size_t>(i)]));
        }
        const Real err = 4 * (d_ + 1) * mag * std::numeric_limits<Real>::epsilon();
        if (acc > err) return 1;
        if (acc < -err) return -1;
        return 0;
    }

    // Sign of Q(sgn * 2 sqrt q) exactly, writing Q(2s) = A + B s with s = sqrt(q).
    int endpoint_sign(int sgn) const {
        Wide a = 0, b = 0, pw = 1;  // pw = 2^i q^floor(i/2)
        const Wide q = static_cast<Wide>(ctx_.q.get_si());
        for (int i = 0; i <= d_; ++i) {
            Wide term = static_cast<Wide>(c_[static_cast<std::size_t>(i)]) * pw * ((i % 2 != 0 && sgn < 0) ? -1 : 1);
            if (i % 2 == 0) {
                a += term;
            } else {
                b += term;
            }
            if (i % 2 == 0) {
                pw *= 2;
            } else {
                pw *= 2 * q;
            }
        }
        if (root_q_) {
            Wide v = a + b * static_cast<Wide>(*root_q_);
            return v > 0 ? 1 : (v < 0 ? -1 : 0);
        }
        auto sg = [](Wide v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
        const int sa = sg(a), sb = sg(b);
        if (sa == 0) return sb;
        if (sb == 0 || sa == sb) return sa;
        // a and b s of opposite signs: compare a^2 with b^2 q.
        const Wide lhs = a * a, rhs = b * b * q;
        return lhs > rhs ? sa : (lhs < rhs ? sb : 0);
    }

    Wide eval_int(Wide m) const {
        Wide acc = 0;
        for (int i = d_; i >= 0; --i) acc = acc * m + c_[static_cast<std::size_t>(i)];
        return acc;
    }

    static Integer to_integer(Wide v) {
        const bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
        Integer hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & ~0ULL));
        Integer out = (hi << 64) + lo;
        return neg ? Integer(-out) : out;
    }

    IntPolynomial weil_polynomial() const {
        // x^d Q(x + q/x) = sum_j c_j sum_k binom(j,k) q^(j-k) x^(d-j+2k)
        std::vector<Wide> out(static_cast<std::size_t>(2 * d_) + 1, 0);
        const Wide q = static_cast<Wide>(ctx_.q.get_si());
        for (int j = 0; j <= d_; ++j) {
            Wide binom = 1, qp = 1;
            for (int t = 0; t < j; ++t) qp *= q;
            for (int k = 0; k <= j; ++k) {
                out[static_cast<std::size_t>(d_ - j + 2 * k)] += c_[static_cast<std::size_t>(j)] * binom * qp;
                binom = binom * (j - k) / (k + 1);
                if (k < j) qp /= q;
            }
        }
        std::vector<Integer> coeffs;
        coeffs.reserve(out.size());
        for (Wide v : out) coeffs.push_back(to_integer(v));
        return IntPolynomial(std::move(coeffs));
    }

    // Exact check that Q has d distinct real roots strictly inside the bound.
    bool totally_real_inside() const {
        if (fast_) {
            if (endpoint_sign(1) <= 0) return false;
            if (endpoint_sign(-1) != (d_ % 2 == 0 ? 1 : -1)) return false;
        } else {
            const IntPolynomial tr = trace();
            if (sign_at(tr, hi_) <= 0) return false;
            if (sign_at(tr, lo_) != (d_ % 2 == 0 ? 1 : -1)) return false;
        }
        const std::vector<Real>& rts = roots_[static_cast<std::size_t>(d_)];
        bool alternating = true;
        for (int j = 0; j + 1 < d_ && alternating; ++j) {
            Real mid = (rts[static_cast<std::size_t>(j)] + rts[static_cast<std::size_t>(j + 1)]) / 2;
            int want = (d_ - 1 - j) % 2 == 0 ? 1 : -1;
            if (certified_sign(mid) != want) alternating = false;
        }
        if (alternating) return true;
        const IntPolynomial tr = trace();
        if (!is_squarefree(tr)) return false;
        return SturmSequence(tr).count(lo_, hi_) == d_;
    }

    // P = x^d Q(x + q/x) with Q irreducible of degree d <= 3 (no rational root)
    // is either irreducible or a product of two degree-d factors whose constant
    // terms are +-q^(d/2); the latter is impossible when d r is odd.
    bool weil_irreducible(const IntPolynomial& P) const {
        if (d_ == 1) return true;
        if (d_ >= 4) return is_irreducible_over_q(P);
        if ((d_ * ctx_.r) % 2 != 0) return true;
        return excludes_factor_degree(P, d_) || is_irreducible_over_q(P);
    }

    void leaf() {
        const std::vector<Real>& rts = roots_[static_cast<std::size_t>(d_)];
        // Cheap rational root exclusion: a rational root of Q is an integer near a numeric root.
        if (d_ >= 2) {
            for (Real rho : rts)
                for (Real m : {std::floor(rho), std::ceil(rho)})
                    if (std::fabs(m) <= bound_ + 1 && eval_int(static_cast<Wide>(m)) == 0) return;
        }
        if (!totally_real_inside()) return;
        IntPolynomial P = fast_ ? weil_polynomial() : from_trace_polynomial(trace(), ctx_.q);
        if (!weil_irreducible(P)) return;
        visit_(WeilClass{ctx_, std::move(P), false});
    }

    const GlobalContext& ctx_;
    int d_;
    const std::function<void(const WeilClass&)>& visit_;
    std::vector<std::int64_t> c_;
    std::vector<std::vector<Real>> roots_;
    Real bound_ = 0;
    Real fact_[12];
    RealPoint lo_, hi_;
    bool fast_ = false;
    std::optional<long> root_q_;
};

}  // namespace

void for_each_weil(const GlobalContext& ctx, int max_degree, const std::function<void(const WeilClass&)>& visit) {
    if (max_degree < 0 || max_degree % 2 != 0 || max_degree > 8)
        throw Error("max_degree must be an even integer between 0 and 8");
    if (ctx.q > Integer(1L << 24)) throw Error("enumeration supports q < 2^24");
    if (max_degree == 0) return;
    for (const auto& c : real_classes(ctx))
        if (c.degree() <= max_degree) visit(c);
    for (int d = 1; d <= max_degree / 2; ++d) TraceEnumerator(ctx, d, visit).run();
}

}  // namespace weilkit

#include <algorithm>
#include <cstdint>

#include "weilkit/finite_field.hpp"
#include "weilkit/matrix.hpp"
#include "weilkit/padic.hpp"

// Places above p read off the p-maximal order: Round 2 enlargement, then the
// primitive idempotents of O/pO and their residue degrees.

namespace weilkit {
namespace {

using Vec = std::vector<Integer>;
using FpRow = std::vector<std::int64_t>;
using FpMat = std::vector<FpRow>;

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::int64_t invmod(std::int64_t a, std::int64_t p) { return powmod(a, p - 2, p); }

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(FpMat& a, std::size_t cols, std::int64_t p) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t sel = row;
        while (sel < a.size() && a[sel][c] == 0) ++sel;
        if (sel == a.size()) continue;
        std::swap(a[row], a[sel]);
        std::int64_t inv = invmod(a[row][c], p);
        for (auto& v : a[row]) v = mulmod(v, inv, p);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][c] == 0) continue;
            std::int64_t f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - mulmod(f, a[row][j], p)) % p + p) % p;
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

std::size_t rank_mod(FpMat a, std::size_t cols, std::int64_t p) { return rref(a, cols, p).size(); }

// Basis of { x : A x = 0 } over F_p.
std::vector<FpRow> nullspace(FpMat a, std::size_t cols, std::int64_t p) {
    auto pivots = rref(a, cols, p);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<FpRow> out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        FpRow x(cols, 0);
        x[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = (p - a[i][free]) % p;
        out.push_back(x);
    }
    return out;
}

// Matrix whose columns are the images of the given vectors.
FpMat columns_to_matrix(const std::vector<Vec>& images, std::int64_t p) {
    const std::size_t rows = images.empty() ? 0 : images[0].size();
    FpMat m(rows, FpRow(images.size(), 0));
    for (std::size_t c = 0; c < images.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) m[r][c] = mod(images[c][r], Integer(p)).get_si();
    return m;
}

// A Z-order of Q[x]/(P) given by a basis in the power basis, with integral
// structure constants.
class Order {
public:
    Order(const IntPolynomial& poly, RationalMatrix basis) : poly_(to_rational(poly)), basis_(std::move(basis)) {
        n_ = static_cast<std::size_t>(poly.degree());
        inv_ = *inverse(basis_);
        table_.assign(n_, std::vector<Vec>(n_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j) {
                RatPolynomial prod = element(i) * element(j);
                Vec c = coords(divmod(prod, poly_).second);
                table_[i][j] = c;
                table_[j][i] = c;
            }
    }

    std::size_t size() const { return n_; }
    const RationalMatrix& basis() const { return basis_; }

    RatPolynomial element(std::size_t i) const {
        std::vector<Rational> c(n_);
        for (std::size_t j = 0; j < n_; ++j) c[j] = basis_(i, j);
        return RatPolynomial(c);
    }

    Vec coords(const RatPolynomial& f) const {
        Vec out(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            Rational acc = 0;
            for (std::size_t i = 0; i < n_; ++i) acc += f.coeff(static_cast<int>(i)) * inv_(i, j);
            if (acc.get_den() != 1) throw Error("maximal order: element is not integral over the order");
            out[j] = acc.get_num();
        }
        return out;
    }

    // Reduces modulo m unless m == 0.
    Vec mul(const Vec& a, const Vec& b, const Integer& m) const {
        Vec out(n_, Integer(0));
        for (std::size_t i = 0; i < n_; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (b[j] == 0) continue;
                Integer ab = a[i] * b[j];
                const Vec& t = table_[i][j];
                for (std::size_t k = 0; k < n_; ++k) out[k] += ab * t[k];
            }
        }
        if (m != 0)
            for (auto& v : out) v = mod(v, m);
        return out;
    }

    Vec pow(Vec a, Integer e, const Integer& m) const {
        Vec r = one();
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a, m);
            a = mul(a, a, m);
            e >>= 1;
        }
        return r;
    }

    Vec one() const { return coords(RatPolynomial::constant(Rational(1))); }
    Vec unit(std::size_t i) const {
        Vec v(n_, Integer(0));
        v[i] = 1;
        return v;
    }

private:
    RatPolynomial poly_;
    RationalMatrix basis_, inv_;
    std::size_t n_ = 0;
    std::vector<std::vector<Vec>> table_;
};

// Basis (rows, in order coordinates) of the F_p-kernel of x -> x^(p^j) with p^j >= n.
std::vector<FpRow> radical_mod_p(const Order& o, std::int64_t p) {
    Integer pj(p);
    while (pj < Integer(static_cast<long>(o.size()))) pj *= p;
    std::vector<Vec> images;
    for (std::size_t i = 0; i < o.size(); ++i) images.push_back(o.pow(o.unit(i), pj, Integer(p)));
    return nullspace(columns_to_matrix(images, p), o.size(), p);
}

IntegerMatrix lift_with_p(const std::vector<FpRow>& rows, std::size_t n, const Integer& p) {
    IntegerMatrix m(0, n);
    for (const auto& r : rows) {
        Vec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = r[i];
        m.append_row(v);
    }
    for (std::size_t i = 0; i < n; ++i) {
        Vec v(n, Integer(0));
        v[i] = p;
        m.append_row(v);
    }
    return row_lattice_basis(m);
}

// One Round 2 step; returns the enlarged order or nullopt when O is p-maximal.
std::optional<Order> enlarge(const IntPolynomial& poly, const Order& o, std::int64_t p) {
    const std::size_t n = o.size();
    const Integer P(p);
    IntegerMatrix ip = lift_with_p(radical_mod_p(o, p), n, P);
    RationalMatrix ip_inv = *inverse(to_rational(ip));
    // Row a: the map beta -> w_a * beta on I_p / p I_p, flattened.
    FpMat rows(n, FpRow(n * n, 0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            Vec prod = o.mul(o.unit(a), ip.row(b), Integer(0));
            for (std::size_t c = 0; c < n; ++c) {
                Rational acc = 0;
                for (std::size_t i = 0; i < n; ++i) acc += Rational(prod[i]) * ip_inv(i, c);
                if (acc.get_den() != 1) throw Error("maximal order: radical is not an ideal");
                rows[a][b * n + c] = mod(acc.get_num(), P).get_si();
            }
        }
    }
    // Left kernel of rows = kernel of its transpose.
    FpMat tr(n * n, FpRow(n, 0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t j = 0; j < n * n; ++j) tr[j][a] = rows[a][j];
    auto ker = nullspace(tr, n, p);
    if (ker.empty()) return std::nullopt;
    IntegerMatrix u = lift_with_p(ker, n, P);
    RationalMatrix nb = to_rational(u) * o.basis();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) nb(i, j) /= Rational(P);
    return Order(poly, nb);
}

Vec to_vec(const FpRow& r) {
    Vec v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) v[i] = r[i];
    return v;
}

FpRow to_row(const Vec& v, std::int64_t p) {
    FpRow r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = mod(v[i], Integer(p)).get_si();
    return r;
}

}  // namespace

std::vector<PlaceAboveP> places_via_maximal_order(const IntPolynomial& poly, const Integer& p, int r) {
    if (!poly.is_monic() || poly.degree() < 1) throw Error("places_via_maximal_order needs a monic polynomial");
    if (poly.coeff(0) == 0) throw Error("remove zero roots first");
    if (!is_prime(p) || !p.fits_slong_p() || p >= Integer(1L << 31)) throw Error("prime out of range");
    const std::int64_t pp = p.get_si();
    const std::size_t n = static_cast<std::size_t>(poly.degree());
    if (n == 1) {
        PlaceAboveP pl;
        pl.root_valuation = Rational(valuation(poly.coeff(0), p));
        pl.invariant = local_invariant(1, 1, pl.root_valuation, r);
        return {pl};
    }

    Order o(poly, RationalMatrix::identity(n));
    for (int round = 0; round < 64; ++round) {
        auto next = enlarge(poly, o, pp);
        if (!next) break;
        o = std::move(*next);
    }

    // Split the commutative F_p-algebra A = O/pO by idempotents of E = {x : x^p = x}.
    std::vector<Vec> frob_minus_one;
    for (std::size_t i = 0; i < n; ++i) {
        Vec img = o.pow(o.unit(i), p, p);
        img[i] -= 1;
        frob_minus_one.push_back(img);
    }
    auto fixed = nullspace(columns_to_matrix(frob_minus_one, pp), n, pp);
    std::vector<Vec> idem = {o.one()};
    for (const auto& y : fixed) {
        std::vector<Vec> refined;
        for (const auto& eps : idem) {
            Vec z = o.mul(eps, to_vec(y), p);
            // Minimal polynomial of z in eps*A, with eps as the unit.
            std::vector<Vec> powers = {eps};
            FpPolynomial minpoly;
            for (std::size_t deg = 1; deg <= n + 1; ++deg) {
                powers.push_back(o.mul(powers.back(), z, p));
                auto ker = nullspace(columns_to_matrix(powers, pp), powers.size(), pp);
                if (!ker.empty()) {
                    minpoly = FpPolynomial(pp, ker[0]).monic();
                    break;
                }
            }
            std::vector<std::int64_t> roots;
            for (const auto& [fac, mult] : factor(minpoly)) {
                if (fac.degree() != 1) throw Error("maximal order: fixed algebra is not split");
                roots.push_back((pp - fac.coeff(0)) % pp);
            }
            if (roots.size() <= 1) {
                refined.push_back(eps);
                continue;
            }
            for (std::size_t i = 0; i < roots.size(); ++i) {
                Vec e = eps;
                for (std::size_t j = 0; j < roots.size(); ++j) {
                    if (i == j) continue;
                    Vec num = z;
                    for (std::size_t k = 0; k < n; ++k) num[k] = mod(num[k] - Integer(roots[j]) * eps[k], p);
                    std::int64_t c = invmod(((roots[i] - roots[j]) % pp + pp) % pp, pp);
                    for (auto& v : num) v = mod(v * c, p);
                    e = o.mul(e, num, p);
                }
                refined.push_back(e);
            }
        }
        idem = std::move(refined);
    }

    const auto rad = radical_mod_p(o, pp);
    const Vec pi = o.coords(RatPolynomial::x());
    long k = valuation(poly.coeff(0), p) + 2;
    const Integer pk = ipow(p, static_cast<unsigned long>(k));

    std::vector<PlaceAboveP> places;
    int total = 0;
    for (const auto& e0 : idem) {
        std::vector<Vec> cols;
        for (std::size_t i = 0; i < n; ++i) cols.push_back(o.mul(e0, o.unit(i), p));
        const long d = static_cast<long>(rank_mod(columns_to_matrix(cols, pp), n, pp));
        FpMat ej;
        for (const auto& j : rad) ej.push_back(to_row(o.mul(e0, to_vec(j), p), pp));
        const long f = d - static_cast<long>(rank_mod(ej, n, pp));

        Vec e = e0;
        for (long prec = 1; prec < 2 * k + 2; prec *= 2) {
            Vec e2 = o.mul(e, e, pk);
            Vec e3 = o.mul(e2, e, pk);
            for (std::size_t i = 0; i < n; ++i) e[i] = mod(3 * e2[i] - 2 * e3[i], pk);
        }
        if (o.mul(e, e, pk) != e) throw Error("maximal order: idempotent lift failed");
        // Norm of pi on the component cut out by e.
        Vec u = o.mul(pi, e, pk);
        Vec one = o.one();
        for (std::size_t i = 0; i < n; ++i) u[i] = mod(u[i] + one[i] - e[i], pk);
        IntegerMatrix m(n, n);
        for (std::size_t c = 0; c < n; ++c) {
            Vec img = o.mul(u, o.unit(c), pk);
            for (std::size_t rr = 0; rr < n; ++rr) m(rr, c) = img[rr];
        }
        Integer det = mod(determinant(m), pk);
        if (det == 0) throw Error("maximal order: norm precision exhausted");
        PlaceAboveP pl;
        pl.e = static_cast<int>(d / f);
        pl.f = static_cast<int>(f);
        pl.root_valuation = Rational(valuation(det, p), d);
        pl.root_valuation.canonicalize();
        pl.invariant = local_invariant(pl.e, pl.f, pl.root_valuation, r);
        places.push_back(pl);
        total += static_cast<int>(d);
    }
    if (total != static_cast<int>(n)) throw Error("maximal order: local degrees do not add up");
    std::sort(places.begin(), places.end(), [](const PlaceAboveP& x, const PlaceAboveP& y) {
        if (x.root_valuation != y.root_valuation) return x.root_valuation < y.root_valuation;
        if (x.e != y.e) return x.e < y.e;
        return x.f < y.f;
    });
    return places;
}

}  // namespace weilkit

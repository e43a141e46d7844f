#include "weilkit/matrix.hpp"

#include <algorithm>

namespace weilkit {

RationalMatrix to_rational(const IntegerMatrix& m) {
    RationalMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
    return out;
}

IntegerMatrix to_integer(const RationalMatrix& m) {
    IntegerMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1) throw Error("matrix entry is not integral");
            out(i, j) = m(i, j).get_num();
        }
    return out;
}

SmithForm smith_normal_form(const IntegerMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    IntegerMatrix A = m, U = IntegerMatrix::identity(R), V = IntegerMatrix::identity(C);
    const std::size_t n = std::min(R, C);
    for (std::size_t t = 0; t < n; ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pi = R, pj = C;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j)
                if (A(i, j) != 0 && (pi == R || abs(A(i, j)) < abs(A(pi, pj)))) pi = i, pj = j;
        if (pi == R) break;
        A.swap_rows(t, pi);
        U.swap_rows(t, pi);
        A.swap_cols(t, pj);
        V.swap_cols(t, pj);

        while (true) {
            // Bring the smallest entry of row t / column t to the pivot.
            std::size_t bi = t, bj = t;
            for (std::size_t i = t; i < R; ++i)
                if (A(i, t) != 0 && (A(bi, bj) == 0 || abs(A(i, t)) < abs(A(bi, bj)))) bi = i, bj = t;
            for (std::size_t j = t; j < C; ++j)
                if (A(t, j) != 0 && (A(bi, bj) == 0 || abs(A(t, j)) < abs(A(bi, bj)))) bi = t, bj = j;
            if (bi != t) {
                A.swap_rows(t, bi);
                U.swap_rows(t, bi);
            }
            if (bj != t) {
                A.swap_cols(t, bj);
                V.swap_cols(t, bj);
            }
            const Integer piv = A(t, t);
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (A(i, t) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), piv.get_mpz_t());
                A.add_row(i, t, -q);
                U.add_row(i, t, -q);
                if (A(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (A(t, j) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), piv.get_mpz_t());
                A.add_col(j, t, -q);
                V.add_col(j, t, -q);
                if (A(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // Divisibility chain: fold an offending row into row t and retry.
            bool divides = true;
            for (std::size_t i = t + 1; i < R && divides; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (!mpz_divisible_p(A(i, j).get_mpz_t(), piv.get_mpz_t())) {
                        A.add_row(t, i, Integer(1));
                        U.add_row(t, i, Integer(1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (A(t, t) < 0) {
            A.scale_row(t, Integer(-1));
            U.scale_row(t, Integer(-1));
        }
    }
    SmithForm out{U, A, V, {}};
    for (std::size_t i = 0; i < n; ++i) out.diagonal.push_back(A(i, i));
    return out;
}

HermiteForm hermite_normal_form(const IntegerMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    IntegerMatrix H = m, U = IntegerMatrix::identity(R);
    std::size_t row = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        while (true) {
            std::size_t best = R;
            for (std::size_t i = row; i < R; ++i)
                if (H(i, col) != 0 && (best == R || abs(H(i, col)) < abs(H(best, col)))) best = i;
            if (best == R) break;
            H.swap_rows(row, best);
            U.swap_rows(row, best);
            bool clean = true;
            for (std::size_t i = row + 1; i < R; ++i) {
                if (H(i, col) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), H(i, col).get_mpz_t(), H(row, col).get_mpz_t());
                H.add_row(i, row, -q);
                U.add_row(i, row, -q);
                if (H(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (H(row, col) == 0) continue;
        if (H(row, col) < 0) {
            H.scale_row(row, Integer(-1));
            U.scale_row(row, Integer(-1));
        }
        for (std::size_t i = 0; i < row; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), H(i, col).get_mpz_t(), H(row, col).get_mpz_t());
            if (q == 0) continue;
            H.add_row(i, row, -q);
            U.add_row(i, row, -q);
        }
        pivots.push_back(col);
        ++row;
    }
    return HermiteForm{H, U, row, pivots};
}

IntegerMatrix row_lattice_basis(const IntegerMatrix& m) {
    HermiteForm h = hermite_normal_form(m);
    IntegerMatrix out(h.rank, m.cols());
    for (std::size_t i = 0; i < h.rank; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = h.H(i, j);
    return out;
}

Integer determinant(const IntegerMatrix& m) {
    if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntegerMatrix a = m;
    Integer prev = 1;
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && a(s, k) == 0) ++s;
            if (s == n) return 0;
            a.swap_rows(k, s);
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sgn * a(n - 1, n - 1);
}

namespace {

// Row echelon form over Q in place; returns the rank.
std::size_t rational_echelon(RationalMatrix& a, Rational* det) {
    const std::size_t R = a.rows(), C = a.cols();
    std::size_t row = 0;
    if (det) *det = 1;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        std::size_t s = row;
        while (s < R && a(s, col) == 0) ++s;
        if (s == R) {
            if (det) *det = 0;
            continue;
        }
        if (s != row) {
            a.swap_rows(s, row);
            if (det) *det = -*det;
        }
        if (det) *det *= a(row, col);
        for (std::size_t i = row + 1; i < R; ++i) {
            if (a(i, col) == 0) continue;
            Rational f = a(i, col) / a(row, col);
            a.add_row(i, row, -f);
        }
        ++row;
    }
    return row;
}

}  // namespace

Rational determinant(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
    RationalMatrix a = m;
    Rational det;
    std::size_t r = rational_echelon(a, &det);
    return r == m.rows() ? det : Rational(0);
}

std::size_t rank(const RationalMatrix& m) {
    RationalMatrix a = m;
    return rational_echelon(a, nullptr);
}

std::size_t rank(const IntegerMatrix& m) { return rank(to_rational(m)); }

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw Error("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix a = m, inv = RationalMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t s = col;
        while (s < n && a(s, col) == 0) ++s;
        if (s == n) return std::nullopt;
        a.swap_rows(s, col);
        inv.swap_rows(s, col);
        Rational f = 1 / a(col, col);
        a.scale_row(col, f);
        inv.scale_row(col, f);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            Rational g = -a(i, col);
            a.add_row(i, col, g);
            inv.add_row(i, col, g);
        }
    }
    return inv;
}

IntegerMatrix integer_kernel(const IntegerMatrix& m) {
    HermiteForm h = hermite_normal_form(m.transpose());
    IntegerMatrix k(0, m.cols());
    for (std::size_t i = h.rank; i < h.U.rows(); ++i) k.append_row(h.U.row(i));
    if (k.rows() == 0) return k;
    return row_lattice_basis(k);
}

std::optional<std::vector<Integer>> solve_in_row_lattice(const IntegerMatrix& basis, const std::vector<Integer>& v) {
    if (v.size() != basis.cols()) throw Error("vector length does not match lattice ambient dimension");
    HermiteForm h = hermite_normal_form(basis);
    std::vector<Integer> rest = v, y(h.rank);
    for (std::size_t i = 0; i < h.rank; ++i) {
        const std::size_t c = h.pivot_cols[i];
        if (!mpz_divisible_p(rest[c].get_mpz_t(), h.H(i, c).get_mpz_t())) return std::nullopt;
        mpz_divexact(y[i].get_mpz_t(), rest[c].get_mpz_t(), h.H(i, c).get_mpz_t());
        if (y[i] == 0) continue;
        for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= y[i] * h.H(i, j);
    }
    for (const auto& r : rest)
        if (r != 0) return std::nullopt;
    std::vector<Integer> x(basis.rows(), Integer(0));
    for (std::size_t i = 0; i < h.rank; ++i) {
        if (y[i] == 0) continue;
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += y[i] * h.U(i, j);
    }
    return x;
}

Integer lattice_index(const IntegerMatrix& sub, const IntegerMatrix& super) {
    IntegerMatrix sb = row_lattice_basis(super);
    IntegerMatrix coords(0, sb.rows());
    for (std::size_t i = 0; i < sub.rows(); ++i) {
        auto x = solve_in_row_lattice(sb, sub.row(i));
        if (!x) throw Error("sublattice is not contained in the lattice");
        coords.append_row(*x);
    }
    HermiteForm h = hermite_normal_form(coords);
    if (h.rank != sb.rows()) throw Error("lattices have different ranks");
    Integer idx = 1;
    for (std::size_t i = 0; i < h.rank; ++i) idx *= h.H(i, h.pivot_cols[i]);
    return idx;
}

LocalSmithForm local_smith_form(const IntegerMatrix& m, const Integer& p, long k) {
    if (k < 1) throw Error("precision must be positive");
    const Integer pk = ipow(p, static_cast<unsigned long>(k));
    const std::size_t R = m.rows(), C = m.cols();
    IntegerMatrix A(R, C), U = IntegerMatrix::identity(R), V = IntegerMatrix::identity(C);
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) A(i, j) = mod(m(i, j), pk);
    auto val = [&](const Integer& x) -> long { return x == 0 ? k : valuation(x, p); };
    auto reduce_row = [&](IntegerMatrix& X, std::size_t i) {
        for (std::size_t j = 0; j < X.cols(); ++j) X(i, j) = mod(X(i, j), pk);
    };
    auto reduce_col = [&](IntegerMatrix& X, std::size_t j) {
        for (std::size_t i = 0; i < X.rows(); ++i) X(i, j) = mod(X(i, j), pk);
    };
    const std::size_t n = std::min(R, C);
    std::vector<long> vals(n, k);
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t pi = t, pj = t;
        long best = k;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                long v = val(A(i, j));
                if (v < best) best = v, pi = i, pj = j;
            }
        if (best == k) break;
        A.swap_rows(t, pi);
        U.swap_rows(t, pi);
        A.swap_cols(t, pj);
        V.swap_cols(t, pj);
        const Integer pv = ipow(p, static_cast<unsigned long>(best));
        Integer unit;
        mpz_divexact(unit.get_mpz_t(), A(t, t).get_mpz_t(), pv.get_mpz_t());
        Integer uinv = inverse_mod(unit, pk);
        A.scale_row(t, uinv);
        U.scale_row(t, uinv);
        reduce_row(A, t);
        reduce_row(U, t);
        for (std::size_t i = t + 1; i < R; ++i) {
            if (A(i, t) == 0) continue;
            Integer f;
            mpz_divexact(f.get_mpz_t(), A(i, t).get_mpz_t(), pv.get_mpz_t());
            A.add_row(i, t, -f);
            U.add_row(i, t, -f);
            reduce_row(A, i);
            reduce_row(U, i);
        }
        for (std::size_t j = t + 1; j < C; ++j) {
            if (A(t, j) == 0) continue;
            Integer f;
            mpz_divexact(f.get_mpz_t(), A(t, j).get_mpz_t(), pv.get_mpz_t());
            A.add_col(j, t, -f);
            V.add_col(j, t, -f);
            reduce_col(A, j);
            reduce_col(V, j);
        }
        vals[t] = best;
    }
    return LocalSmithForm{U, A, V, vals, p, k};
}

std::optional<std::vector<Integer>> solve_mod_prime_power(const IntegerMatrix& m, const std::vector<Integer>& b,
                                                          const Integer& p, long k) {
    if (b.size() != m.rows()) throw Error("right-hand side has the wrong length");
    const Integer pk = ipow(p, static_cast<unsigned long>(k));
    LocalSmithForm s = local_smith_form(m, p, k);
    std::vector<Integer> c = s.U.apply(b);
    for (auto& v : c) v = mod(v, pk);
    std::vector<Integer> y(m.cols(), Integer(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
        long v = i < s.valuations.size() ? s.valuations[i] : k;
        if (c[i] == 0) continue;
        if (valuation(c[i], p) < v) return std::nullopt;
        if (v == k) return std::nullopt;
        mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), ipow(p, static_cast<unsigned long>(v)).get_mpz_t());
    }
    std::vector<Integer> x = s.V.apply(y);
    for (auto& v : x) v = mod(v, pk);
    return x;
}

LocalKernel kernel_mod_prime_power(const IntegerMatrix& m, const Integer& p, long k) {
    const Integer pk = ipow(p, static_cast<unsigned long>(k));
    LocalSmithForm s = local_smith_form(m, p, k);
    const std::size_t C = m.cols();
    LocalKernel out;
    out.free_part = IntegerMatrix(C, 0);
    out.torsion = IntegerMatrix(C, 0);
    std::vector<std::vector<Integer>> free_cols, tors_cols;
    long worst = 0;
    for (std::size_t i = 0; i < C; ++i) {
        long v = i < s.valuations.size() ? s.valuations[i] : k;
        if (v == 0) continue;
        std::vector<Integer> col = s.V.col(i);
        if (v >= k) {
            for (auto& x : col) x = mod(x, pk);
            free_cols.push_back(col);
        } else {
            Integer scale = ipow(p, static_cast<unsigned long>(k - v));
            for (auto& x : col) x = mod(x * scale, pk);
            tors_cols.push_back(col);
            worst = std::max(worst, v);
        }
    }
    auto pack = [&](const std::vector<std::vector<Integer>>& cols) {
        IntegerMatrix M(C, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < C; ++i) M(i, j) = cols[j][i];
        return M;
    };
    out.free_part = pack(free_cols);
    out.torsion = pack(tors_cols);
    out.stable_precision = k - worst;
    return out;
}

bool column_span_contains(const IntegerMatrix& a, const IntegerMatrix& b, const Integer& p, long k) {
    if (a.rows() != b.rows()) throw Error("column spans live in different ambient spaces");
    if (a.cols() == 0) {
        const Integer pk = ipow(p, static_cast<unsigned long>(k));
        for (const auto& v : b.data())
            if (mod(v, pk) != 0) return false;
        return true;
    }
    for (std::size_t j = 0; j < b.cols(); ++j)
        if (!solve_mod_prime_power(a, b.col(j), p, k)) return false;
    return true;
}

}  // namespace weilkit

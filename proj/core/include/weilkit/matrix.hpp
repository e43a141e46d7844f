#pragma once

#include <optional>
#include <vector>

#include "weilkit/integer.hpp"

namespace weilkit {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows * cols) throw Error("matrix data has the wrong size");
    }
    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty()) return Matrix();
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw Error("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }
    void append_row(const std::vector<T>& r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw Error("appended row has the wrong length");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    // row[target] += f * row[source]
    void add_row(std::size_t target, std::size_t source, const T& f) {
        if (f == 0) return;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += f * (*this)(source, j);
    }
    void add_col(std::size_t target, std::size_t source, const T& f) {
        if (f == 0) return;
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += f * (*this)(i, source);
    }
    void scale_row(std::size_t i, const T& f) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) *= f;
    }
    void scale_col(std::size_t j, const T& f) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) *= f;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& v = a(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += v * b(k, j);
            }
        return out;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix sum shape mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix difference shape mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_) throw Error("matrix-vector shape mismatch");
        std::vector<T> out(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    const std::vector<T>& data() const { return data_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

RationalMatrix to_rational(const IntegerMatrix& m);
// Throws unless every entry is integral.
IntegerMatrix to_integer(const RationalMatrix& m);

// U * M * V = D with D diagonal, d_1 | d_2 | ..., all d_i >= 0.
struct SmithForm {
    IntegerMatrix U, D, V;
    std::vector<Integer> diagonal;  // min(rows, cols) entries
};
SmithForm smith_normal_form(const IntegerMatrix& m);

// Row-style Hermite normal form: U * M = H, H in echelon form with positive
// pivots and entries above each pivot reduced into [0, pivot).
struct HermiteForm {
    IntegerMatrix H, U;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};
HermiteForm hermite_normal_form(const IntegerMatrix& m);
// Nonzero rows of the HNF: a canonical basis of the row lattice.
IntegerMatrix row_lattice_basis(const IntegerMatrix& m);

Integer determinant(const IntegerMatrix& m);
Rational determinant(const RationalMatrix& m);
std::size_t rank(const IntegerMatrix& m);
std::size_t rank(const RationalMatrix& m);
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

// Saturated Z-basis (as rows) of { x : M x = 0 }.
IntegerMatrix integer_kernel(const IntegerMatrix& m);

// Solves x * B = v for integral x where B has independent rows; nullopt when
// v is outside the row lattice.
std::optional<std::vector<Integer>> solve_in_row_lattice(const IntegerMatrix& basis, const std::vector<Integer>& v);

// [L : S] for row lattices S subset L of equal rank; throws if S is not
// contained in L or the ranks differ.
Integer lattice_index(const IntegerMatrix& sub, const IntegerMatrix& super);

// Smith form over the local ring Z/p^k. Entries of U, D, V are reduced into
// [0, p^k); valuations[i] == k marks a zero diagonal entry.
struct LocalSmithForm {
    IntegerMatrix U, D, V;
    std::vector<long> valuations;
    Integer p;
    long k = 0;
};
LocalSmithForm local_smith_form(const IntegerMatrix& m, const Integer& p, long k);

// Solves M x = b over Z/p^k.
std::optional<std::vector<Integer>> solve_mod_prime_power(const IntegerMatrix& m, const std::vector<Integer>& b,
                                                          const Integer& p, long k);

// Generators (columns) of { x : M x = 0 mod p^k }, plus the stable precision
// k' below which the free part of the kernel is determined exactly.
struct LocalKernel {
    IntegerMatrix free_part;   // columns: kernel directions that are free mod p^k
    IntegerMatrix torsion;     // columns: p^(k - v_i) multiples
    long stable_precision = 0;
};
LocalKernel kernel_mod_prime_power(const IntegerMatrix& m, const Integer& p, long k);

// True iff every column of b lies in the Z/p^k column span of a.
bool column_span_contains(const IntegerMatrix& a, const IntegerMatrix& b, const Integer& p, long k);

}  // namespace weilkit

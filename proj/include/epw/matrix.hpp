#pragma once

#include "epw/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace epw {

/** Dense row-major matrix over an exact ring. */
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data))
    {
        if (data_.size() != rows_ * cols_)
            throw std::invalid_argument("matrix data size mismatch");
    }
    Matrix(std::initializer_list<std::initializer_list<T>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& r : init) {
            if (r.size() != cols_)
                throw std::invalid_argument("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols)
    {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw std::invalid_argument("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const
    {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    std::vector<T> col(std::size_t j) const
    {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }
    void set_row(std::size_t i, const std::vector<T>& r)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = r[j];
    }
    void append_row(const std::vector<T>& r)
    {
        if (rows_ == 0 && cols_ == 0)
            cols_ = r.size();
        if (r.size() != cols_)
            throw std::invalid_argument("row length mismatch");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }
    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    /** Rows listed in `idx`, in that order. */
    Matrix select_rows(const std::vector<std::size_t>& idx) const
    {
        Matrix m(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = (*this)(idx[i], j);
        return m;
    }
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        Matrix m(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
    }
    bool is_symmetric() const
    {
        if (rows_ != cols_)
            return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i))
                    return false;
        return true;
    }

    const std::vector<T>& data() const { return data_; }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend Matrix operator+(const Matrix& a, const Matrix& b)
    {
        check_same_shape(a, b);
        Matrix c(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            c.data_[k] = a.data_[k] + b.data_[k];
        return c;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b)
    {
        check_same_shape(a, b);
        Matrix c(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            c.data_[k] = a.data_[k] - b.data_[k];
        return c;
    }
    friend Matrix operator-(const Matrix& a)
    {
        Matrix c(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            c.data_[k] = -a.data_[k];
        return c;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }
    friend Matrix operator*(const T& s, const Matrix& a)
    {
        Matrix c(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            c.data_[k] = s * a.data_[k];
        return c;
    }

    std::vector<T> apply(const std::vector<T>& x) const
    {
        if (x.size() != cols_)
            throw std::invalid_argument("matrix-vector shape mismatch");
        std::vector<T> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                y[i] += (*this)(i, j) * x[j];
        return y;
    }

private:
    static void check_same_shape(const Matrix& a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;
using RatVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

inline Rational dot(const RatVector& a, const RatVector& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/** x^T G y. */
template <typename T>
T bilinear(const Matrix<T>& g, const std::vector<T>& x, const std::vector<T>& y)
{
    T s = 0;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        if (x[i] == 0)
            continue;
        T row = 0;
        for (std::size_t j = 0; j < g.cols(); ++j)
            row += g(i, j) * y[j];
        s += x[i] * row;
    }
    return s;
}

inline RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = Rational(m(i, j));
    return r;
}

inline RatVector to_rational(const IntVector& v)
{
    RatVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = Rational(v[i]);
    return r;
}

struct Echelon {
    RatMatrix reduced;               // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots; // pivot column of each row
};

/** Reduced row echelon form by Gauss-Jordan elimination. */
inline Echelon rref(RatMatrix m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        m.swap_rows(p, r);
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {m.block(0, 0, r, m.cols()), pivots};
}

inline std::size_t rank(const RatMatrix& m)
{
    if (m.empty())
        return 0;
    return rref(m).pivots.size();
}

/** Basis of the row space, as the nonzero rows of the reduced echelon form. */
inline RatMatrix row_basis(const RatMatrix& m)
{
    if (m.rows() == 0)
        return RatMatrix(0, m.cols());
    return rref(m).reduced;
}

/** Rows form a basis of {x : m x = 0}. */
inline RatMatrix nullspace(const RatMatrix& m)
{
    std::size_t n = m.cols();
    if (m.rows() == 0)
        return RatMatrix::identity(n);
    Echelon e = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    RatMatrix basis(0, n);
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        RatVector v(n);
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = -e.reduced(i, f);
        basis.append_row(v);
    }
    return basis;
}

/** Stack the rows of a on top of those of b. */
template <typename T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.rows() == 0)
        return b;
    if (b.rows() == 0)
        return a;
    if (a.cols() != b.cols())
        throw std::invalid_argument("vstack column mismatch");
    Matrix<T> c(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(a.rows() + i, j) = b(i, j);
    return c;
}

/** Basis of rowspace(a) ∩ rowspace(b). */
inline RatMatrix intersect_rowspaces(const RatMatrix& a, const RatMatrix& b)
{
    std::size_t n = std::max(a.cols(), b.cols());
    RatMatrix ba = row_basis(a), bb = row_basis(b);
    if (ba.rows() == 0 || bb.rows() == 0)
        return RatMatrix(0, n);
    // x a + y b = 0  <=>  (x, y) in the left kernel of [a; b]
    RatMatrix stacked = vstack(ba, bb);
    RatMatrix rel = nullspace(stacked.transpose());
    RatMatrix out(0, n);
    for (std::size_t r = 0; r < rel.rows(); ++r) {
        RatVector v(n);
        for (std::size_t i = 0; i < ba.rows(); ++i) {
            if (rel(r, i) == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                v[j] += rel(r, i) * ba(i, j);
        }
        out.append_row(v);
    }
    return row_basis(out);
}

inline bool in_rowspace(const RatMatrix& basis, const RatVector& v)
{
    if (basis.rows() == 0)
        return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
    RatMatrix s = basis;
    s.append_row(v);
    return rank(s) == rank(basis);
}

inline Rational determinant(RatMatrix m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant of non-square matrix");
    std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            m.swap_rows(p, c);
            det = -det;
        }
        det *= m(c, c);
        Rational inv = 1 / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0)
                continue;
            Rational f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse of non-square matrix");
    std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    Echelon e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
        return std::nullopt;
    return e.reduced.block(0, n, n, n);
}

/** Classical adjugate of a numeric matrix; valid also when m is singular. */
inline RatMatrix adjugate(const RatMatrix& m)
{
    std::size_t n = m.rows();
    if (n != m.cols())
        throw std::invalid_argument("adjugate of non-square matrix");
    if (n == 0)
        return RatMatrix(0, 0);
    if (n == 1)
        return RatMatrix(1, 1, {Rational(1)});
    Rational d = determinant(m);
    if (d != 0)
        return d * *inverse(m);
    RatMatrix adj(n, n);
    RatMatrix minor(n - 1, n - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // adj(j, i) = (-1)^{i+j} det(m without row i, col j)
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == i)
                    continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == j)
                        continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            Rational cof = determinant(minor);
            adj(j, i) = ((i + j) % 2 == 0) ? cof : Rational(-cof);
        }
    return adj;
}

/** Some X with a X = b, if one exists. */
inline std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b)
{
    std::size_t n = a.cols();
    RatMatrix aug(a.rows(), n + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            aug(i, n + j) = b(i, j);
    }
    Echelon e = rref(aug);
    RatMatrix x(n, b.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] >= n)
            return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j)
            x(e.pivots[i], j) = e.reduced(i, n + j);
    }
    return x;
}

/** Gram matrix S G S^T of the form g on the row span of s. */
inline RatMatrix restrict_form(const RatMatrix& g, const RatMatrix& s)
{
    return s * g * s.transpose();
}

} // namespace epw

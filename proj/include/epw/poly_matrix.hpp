#pragma once

#include "epw/matrix.hpp"
#include "epw/poly.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace epw {

/** Rectangular grid of polynomials over one ring. */
class PolyMatrix {
public:
    PolyMatrix() : vars_(make_vars({})) {}
    PolyMatrix(VarNames vars, std::size_t rows, std::size_t cols)
        : vars_(vars), rows_(rows), cols_(cols), data_(rows * cols, MultiPoly(vars))
    {
    }

    static PolyMatrix identity(const VarNames& vars, std::size_t n)
    {
        PolyMatrix m(vars, n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = MultiPoly::constant(vars, 1);
        return m;
    }
    static PolyMatrix constant(const VarNames& vars, const RatMatrix& c)
    {
        PolyMatrix m(vars, c.rows(), c.cols());
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < c.cols(); ++j)
                m(i, j) = MultiPoly::constant(vars, c(i, j));
        return m;
    }

    const VarNames& vars() const { return vars_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    MultiPoly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const MultiPoly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RatMatrix eval(const std::vector<Rational>& x) const
    {
        RatMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = (*this)(i, j).eval(x);
        return m;
    }

    PolyMatrix transpose() const
    {
        PolyMatrix t(vars_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    /** Largest total degree of an entry in row i (-1 if the row vanishes). */
    int row_degree(std::size_t i) const
    {
        int d = -1;
        for (std::size_t j = 0; j < cols_; ++j)
            d = std::max(d, (*this)(i, j).degree());
        return d;
    }
    int col_degree(std::size_t j) const
    {
        int d = -1;
        for (std::size_t i = 0; i < rows_; ++i)
            d = std::max(d, (*this)(i, j).degree());
        return d;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b)
    {
        check_shape(a, b);
        PolyMatrix c(a.vars_, a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            c.data_[k] = a.data_[k] + b.data_[k];
        return c;
    }
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b)
    {
        check_shape(a, b);
        PolyMatrix c(a.vars_, a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            c.data_[k] = a.data_[k] - b.data_[k];
        return c;
    }
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("polynomial matrix product shape mismatch");
        PolyMatrix c(a.vars_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero())
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero())
                        c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }
    friend PolyMatrix operator*(const MultiPoly& s, const PolyMatrix& a)
    {
        PolyMatrix c(a.vars_, a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            c.data_[k] = s * a.data_[k];
        return c;
    }

private:
    static void check_shape(const PolyMatrix& a, const PolyMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("polynomial matrix shape mismatch");
    }

    VarNames vars_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<MultiPoly> data_;
};

/** Lattice points {a in N^n : |a| <= d}, enumerated in a fixed order. */
inline std::vector<std::vector<unsigned>> simplex_points(unsigned n, unsigned d)
{
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(n, 0);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned left) {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            cur[i] = e;
            rec(i + 1, left - e);
        }
        cur[i] = 0;
    };
    rec(0, d);
    return out;
}

namespace detail {

/** Coefficients of x(x-1)...(x-b+1) in the power basis, for b = 0..d. */
inline std::vector<std::vector<Rational>> falling_factorials(unsigned d)
{
    std::vector<std::vector<Rational>> ff(d + 1);
    ff[0] = {Rational(1)};
    for (unsigned b = 1; b <= d; ++b) {
        ff[b].assign(b + 1, Rational(0));
        for (unsigned p = 0; p < b; ++p) {
            ff[b][p + 1] += ff[b - 1][p];
            ff[b][p] -= Rational(b - 1) * ff[b - 1][p];
        }
    }
    return ff;
}

} // namespace detail

/**
 * Recover a matrix of polynomials of total degree <= degree from its values at the
 * simplex lattice points. Newton forward differences are taken axis by axis, then the
 * binomial basis is converted to monomials. Exact whenever the degree bound holds.
 */
inline PolyMatrix interpolate_matrix(const VarNames& vars, unsigned degree, std::size_t rows, std::size_t cols,
                                     const std::function<RatMatrix(const std::vector<Rational>&)>& eval)
{
    unsigned n = static_cast<unsigned>(vars->size());
    auto pts = simplex_points(n, degree);
    std::unordered_map<std::uint64_t, std::size_t> index;
    index.reserve(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k)
        index[mono::pack(pts[k])] = k;

    std::size_t width = rows * cols;
    std::vector<std::vector<Rational>> val(pts.size());
    std::vector<Rational> x(n);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        for (unsigned a = 0; a < n; ++a)
            x[a] = pts[k][a];
        RatMatrix m = eval(x);
        if (m.rows() != rows || m.cols() != cols)
            throw std::logic_error("interpolate_matrix: evaluator returned wrong shape");
        val[k] = m.data();
    }

    auto ff = detail::falling_factorials(degree);
    std::vector<Rational> fact(degree + 1);
    fact[0] = 1;
    for (unsigned b = 1; b <= degree; ++b)
        fact[b] = fact[b - 1] * b;

    auto for_each_line = [&](unsigned a, const std::function<void(std::vector<std::size_t>&)>& body) {
        std::vector<std::size_t> line;
        for (const auto& p : pts) {
            if (p[a] != 0)
                continue;
            unsigned used = 0;
            for (unsigned e : p)
                used += e;
            line.clear();
            std::uint64_t m = mono::pack(p);
            for (unsigned e = 0; e + used <= degree; ++e)
                line.push_back(index.at(mono::with_exponent(m, a, e)));
            body(line);
        }
    };

    // forward differences along each axis
    for (unsigned a = 0; a < n; ++a)
        for_each_line(a, [&](std::vector<std::size_t>& line) {
            std::size_t len = line.size();
            for (std::size_t r = 1; r < len; ++r)
                for (std::size_t i = len - 1; i >= r; --i) {
                    for (std::size_t w = 0; w < width; ++w)
                        val[line[i]][w] -= val[line[i - 1]][w];
                }
        });
    // binomial basis C(x_a, b) -> powers of x_a
    for (unsigned a = 0; a < n; ++a)
        for_each_line(a, [&](std::vector<std::size_t>& line) {
            std::size_t len = line.size();
            std::vector<std::vector<Rational>> out(len, std::vector<Rational>(width));
            for (std::size_t b = 0; b < len; ++b) {
                for (std::size_t p = 0; p <= b; ++p) {
                    if (ff[b][p] == 0)
                        continue;
                    Rational f = ff[b][p] / fact[b];
                    for (std::size_t w = 0; w < width; ++w)
                        if (val[line[b]][w] != 0)
                            out[p][w] += f * val[line[b]][w];
                }
            }
            for (std::size_t b = 0; b < len; ++b)
                val[line[b]] = std::move(out[b]);
        });

    PolyMatrix result(vars, rows, cols);
    for (std::size_t w = 0; w < width; ++w) {
        std::vector<Term> terms;
        for (std::size_t k = 0; k < pts.size(); ++k)
            if (val[k][w] != 0)
                terms.push_back({mono::pack(pts[k]), val[k][w]});
        result(w / cols, w % cols) = MultiPoly::from_terms(vars, std::move(terms));
    }
    return result;
}

inline MultiPoly interpolate_poly(const VarNames& vars, unsigned degree,
                                  const std::function<Rational(const std::vector<Rational>&)>& eval)
{
    PolyMatrix m = interpolate_matrix(vars, degree, 1, 1, [&](const std::vector<Rational>& x) {
        return RatMatrix(1, 1, {eval(x)});
    });
    return m(0, 0);
}

enum class DetStrategy { Automatic, Bareiss, Interpolation };

/** Upper bound on the degree of det m from row and column degrees. */
inline unsigned det_degree_bound(const PolyMatrix& m)
{
    long rsum = 0, csum = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        rsum += std::max(0, m.row_degree(i));
    for (std::size_t j = 0; j < m.cols(); ++j)
        csum += std::max(0, m.col_degree(j));
    return static_cast<unsigned>(std::min(rsum, csum));
}

/** Fraction-free elimination; every division is exact. */
inline MultiPoly det_bareiss(PolyMatrix m)
{
    std::size_t n = m.rows();
    const VarNames& v = m.vars();
    if (n == 0)
        return MultiPoly::constant(v, 1);
    MultiPoly prev = MultiPoly::constant(v, 1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m(p, k).is_zero())
                ++p;
            if (p == n)
                return MultiPoly(v);
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(k, j), m(p, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                auto q = divide_exact(num, prev);
                if (!q)
                    throw std::logic_error("Bareiss step was not exact");
                m(i, j) = std::move(*q);
            }
        prev = m(k, k);
    }
    return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

inline MultiPoly det_interpolate(const PolyMatrix& m)
{
    unsigned bound = det_degree_bound(m);
    return interpolate_poly(m.vars(), bound, [&](const std::vector<Rational>& x) { return determinant(m.eval(x)); });
}

/** Exact determinant of a square polynomial matrix of side at most 12. */
inline MultiPoly det_poly_matrix(const PolyMatrix& m, DetStrategy strategy = DetStrategy::Automatic)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant of a non-square polynomial matrix");
    if (m.rows() > 12)
        throw std::invalid_argument("polynomial determinant limited to side 12");
    if (strategy == DetStrategy::Automatic)
        strategy = (m.rows() >= 7 && !m.vars()->empty()) ? DetStrategy::Interpolation : DetStrategy::Bareiss;
    if (strategy == DetStrategy::Interpolation)
        return det_interpolate(m);
    if (m.rows() == 2)
        return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (m.rows() == 3)
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    return det_bareiss(m);
}

/** Matrix of cofactors transposed, so that m * adj = det(m) * I. */
inline PolyMatrix adjugate_poly_matrix(const PolyMatrix& m)
{
    std::size_t n = m.rows();
    if (n != m.cols())
        throw std::invalid_argument("adjugate of a non-square polynomial matrix");
    if (n > 12)
        throw std::invalid_argument("polynomial adjugate limited to side 12");
    const VarNames& v = m.vars();
    if (n == 1)
        return PolyMatrix::identity(v, 1);
    if (n <= 4 || v->empty()) {
        PolyMatrix adj(v, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                PolyMatrix minor(v, n - 1, n - 1);
                for (std::size_t r = 0, rr = 0; r < n; ++r) {
                    if (r == i)
                        continue;
                    for (std::size_t c = 0, cc = 0; c < n; ++c)
                        if (c != j)
                            minor(rr, cc++) = m(r, c);
                    ++rr;
                }
                MultiPoly d = det_bareiss(minor);
                adj(j, i) = ((i + j) % 2 == 0) ? d : -d;
            }
        return adj;
    }
    std::vector<int> rd(n);
    for (std::size_t i = 0; i < n; ++i)
        rd[i] = std::max(0, m.row_degree(i));
    std::sort(rd.begin(), rd.end());
    unsigned bound = 0;
    for (std::size_t i = 1; i < n; ++i)
        bound += static_cast<unsigned>(rd[i]);
    return interpolate_matrix(v, bound, n, n, [&](const std::vector<Rational>& x) { return adjugate(m.eval(x)); });
}

} // namespace epw

#pragma once

#include "epw/wedge.hpp"

#include <stdexcept>
#include <vector>

namespace epw {

/** Index pairs (a,b), a<b, of a basis f_0..f_4 of V0, in lexicographic order. */
inline const std::vector<std::pair<unsigned, unsigned>>& chart_pairs()
{
    static const std::vector<std::pair<unsigned, unsigned>> p = [] {
        std::vector<std::pair<unsigned, unsigned>> out;
        for (unsigned a = 0; a < 5; ++a)
            for (unsigned b = a + 1; b < 5; ++b)
                out.emplace_back(a, b);
        return out;
    }();
    return p;
}

/**
 * A point v0 with a complement V0 = span(f_0..f_4). Bivectors of V0 use the basis
 * alpha_i = f_a ^ f_b and trivectors of V0 the basis gamma_l = f_a ^ f_b ^ f_c, both
 * lexicographic. The volume form on the fifth power of V0 is x -> vol(v0 ^ x).
 * The affine point with chart coordinates x is [v0 - sum x_a f_a].
 */
class ChartBasis {
public:
    ChartBasis() = default;
    ChartBasis(const Vec6& v0, const RatMatrix& v0_complement) : v0_(v0), f_(v0_complement)
    {
        if (v0.size() != 6 || is_zero_vector(v0))
            throw std::invalid_argument("chart base point must be a nonzero vector of V");
        if (f_.rows() != 5 || f_.cols() != 6)
            throw std::invalid_argument("chart complement needs a 5x6 basis");
        RatMatrix all = f_;
        all.append_row(v0_);
        if (rank(all) != 6)
            throw std::invalid_argument("complement is not transversal to the base point");
        for (auto [a, b] : chart_pairs())
            alpha_.push_back(ext::wedge_vectors({f_.row(a), f_.row(b)}));
        for (unsigned a = 0; a < 5; ++a)
            for (unsigned b = a + 1; b < 5; ++b)
                for (unsigned c = b + 1; c < 5; ++c)
                    gamma_.push_back(ext::wedge_vectors({f_.row(a), f_.row(b), f_.row(c)}));
        adapted_ = RatMatrix(20, 20);
        for (std::size_t i = 0; i < 10; ++i) {
            adapted_.set_row(i, ext::wedge(1, v0_, 2, alpha_[i]));
            adapted_.set_row(10 + i, gamma_[i]);
        }
        adapted_inv_ = *inverse(adapted_);
        pairing_ = RatMatrix(10, 10);
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t l = 0; l < 10; ++l)
                pairing_(i, l) = vol0(ext::wedge(2, alpha_[i], 3, gamma_[l]));
        for (unsigned a = 0; a < 5; ++a) {
            RatMatrix g(10, 10);
            for (std::size_t i = 0; i < 10; ++i) {
                RatVector fa = ext::wedge(1, f_.row(a), 2, alpha_[i]);
                for (std::size_t j = 0; j < 10; ++j)
                    g(i, j) = vol0(ext::wedge(3, fa, 2, alpha_[j]));
            }
            plucker_.push_back(g);
        }
    }

    /** Default chart at e1 with complement span(e2..e6). */
    static ChartBasis standard()
    {
        RatMatrix f(5, 6);
        for (unsigned a = 0; a < 5; ++a)
            f(a, a + 1) = 1;
        return ChartBasis(ext::unit(0), f);
    }

    const Vec6& v0() const { return v0_; }
    const RatMatrix& complement() const { return f_; }
    const std::vector<RatVector>& alpha() const { return alpha_; }
    const std::vector<RatVector>& gamma() const { return gamma_; }
    /** P(i,l) = vol0(alpha_i ^ gamma_l). */
    const RatMatrix& pairing() const { return pairing_; }
    /** Gram of alpha -> vol0(f_a ^ alpha ^ alpha) for each a. */
    const std::vector<RatMatrix>& plucker() const { return plucker_; }

    Rational vol0(const RatVector& five_vector) const { return ext::wedge(1, v0_, 5, five_vector)[0]; }

    /** The point of V with chart coordinates x. */
    Vec6 point(const RatVector& x) const
    {
        Vec6 p = v0_;
        for (unsigned a = 0; a < 5; ++a)
            for (unsigned j = 0; j < 6; ++j)
                p[j] -= x[a] * f_(a, j);
        return p;
    }

    /** Numeric Gram of q_v for v = sum x_a f_a. */
    RatMatrix plucker_at(const RatVector& x) const
    {
        RatMatrix g(10, 10);
        for (unsigned a = 0; a < 5; ++a)
            if (x[a] != 0)
                g = g + x[a] * plucker_[a];
        return g;
    }

    /** Coordinates of a trivector in the basis (v0 ^ alpha_i, gamma_l). */
    RatVector adapted_coords(const Trivector& t) const
    {
        // t = c * adapted  =>  c = t * adapted^{-1}
        RatVector c(20);
        for (std::size_t j = 0; j < 20; ++j) {
            if (t[j] == 0)
                continue;
            for (std::size_t k = 0; k < 20; ++k)
                c[k] += t[j] * adapted_inv_(j, k);
        }
        return c;
    }

    /** Whether the third power of V0 meets A only in 0. */
    bool transversal(const LagrangianFrame& a) const
    {
        RatMatrix g = RatMatrix::from_rows(gamma_, 20);
        return rank(vstack(a.rows(), g)) == 20;
    }

    /** Gram of q_A in the alpha basis; requires transversality. */
    RatMatrix gram_of(const LagrangianFrame& a) const
    {
        RatMatrix x(10, 10), y(10, 10);
        for (std::size_t r = 0; r < 10; ++r) {
            RatVector c = adapted_coords(a.rows().row(r));
            for (std::size_t k = 0; k < 10; ++k) {
                x(r, k) = c[k];
                y(r, k) = c[10 + k];
            }
        }
        auto xi = inverse(x);
        if (!xi)
            throw std::invalid_argument("A meets the third power of V0: chart is not transversal");
        RatMatrix graph = *xi * y; // A = { v0^alpha_i + sum_l graph(i,l) gamma_l }
        return pairing_ * graph.transpose();
    }

    /** The Lagrangian graph of a symmetric form q on the second power of V0. */
    LagrangianFrame graph_of(const RatMatrix& q) const
    {
        if (q.rows() != 10 || q.cols() != 10)
            throw std::invalid_argument("graph form must be 10x10");
        if (!q.is_symmetric())
            throw std::invalid_argument("graph form is not symmetric, so its graph is not Lagrangian");
        RatMatrix graph = q * inverse(pairing_)->transpose();
        RatMatrix rows(10, 20);
        for (std::size_t i = 0; i < 10; ++i) {
            RatVector t = ext::wedge(1, v0_, 2, alpha_[i]);
            for (std::size_t l = 0; l < 10; ++l)
                if (graph(i, l) != 0)
                    for (std::size_t j = 0; j < 20; ++j)
                        t[j] += graph(i, l) * gamma_[l][j];
            rows.set_row(i, t);
        }
        return LagrangianFrame(rows);
    }

    /** Bivector of V0 with alpha-coordinates c. */
    RatVector bivector(const RatVector& c) const
    {
        RatVector b(15);
        for (std::size_t i = 0; i < 10; ++i)
            if (c[i] != 0)
                for (std::size_t j = 0; j < 15; ++j)
                    b[j] += c[i] * alpha_[i][j];
        return b;
    }

private:
    Vec6 v0_;
    RatMatrix f_;
    std::vector<RatVector> alpha_;
    std::vector<RatVector> gamma_;
    RatMatrix adapted_;
    RatMatrix adapted_inv_;
    RatMatrix pairing_;
    std::vector<RatMatrix> plucker_;
};

/** A = { v0 ^ alpha + q~(alpha) }, reading q through the chart's volume form. */
inline LagrangianFrame lagrangian_from_graph(const ChartBasis& chart, const RatMatrix& q)
{
    return chart.graph_of(q);
}

/** Symmetric 10x10 form whose kernel is exactly the row span of k (alpha-coordinates). */
inline RatMatrix symmetric_with_kernel(Rng& rng, const RatMatrix& k)
{
    RatMatrix kb = row_basis(k.rows() ? k : RatMatrix(0, 10));
    std::size_t r = 10 - kb.rows();
    RatMatrix c = nullspace(kb.rows() ? kb : RatMatrix(0, 10)); // rows annihilate K
    for (int attempt = 0; attempt < 100; ++attempt) {
        RatMatrix s = rng.symmetric(r);
        if (determinant(s) == 0)
            continue;
        return c.transpose() * s * c;
    }
    throw std::runtime_error("could not draw a nondegenerate form");
}

} // namespace epw

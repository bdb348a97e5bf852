#pragma once

#include "epw/chart.hpp"

#include <cstdint>
#include <vector>

namespace epw {

/** A Lagrangian built as a graph over a chart, with the data used to build it. */
struct GraphInstance {
    ChartBasis chart;
    LagrangianFrame a;
    RatMatrix q;                  // Gram of q_A in the chart
    RatMatrix kernel;             // basis of ker q (alpha coordinates)
    std::vector<Subspace3> theta; // elements of Theta known by construction
};

inline std::size_t alpha_index(unsigned a, unsigned b)
{
    const auto& p = chart_pairs();
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] == std::make_pair(a, b))
            return i;
    throw std::invalid_argument("alpha_index expects a < b < 5");
}

inline GraphInstance graph_with_kernel(const ChartBasis& chart, const RatMatrix& kernel, std::uint64_t seed)
{
    Rng rng(seed);
    GraphInstance g;
    g.chart = chart;
    g.kernel = row_basis(kernel.rows() ? kernel : RatMatrix(0, 10));
    g.q = symmetric_with_kernel(rng, g.kernel);
    g.a = lagrangian_from_graph(chart, g.q);
    return g;
}

/** Random nondegenerate graph over the standard chart. */
inline GraphInstance random_graph_instance(std::uint64_t seed)
{
    return graph_with_kernel(ChartBasis::standard(), RatMatrix(0, 10), seed);
}

/** Graph whose form has a random k-dimensional kernel; generic kernels contain no decomposable bivector. */
inline GraphInstance generic_kernel_instance(std::size_t k, std::uint64_t seed)
{
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    RatMatrix kernel = rng.matrix(k, 10);
    while (rank(kernel) != k)
        kernel = rng.matrix(k, 10);
    return graph_with_kernel(ChartBasis::standard(), kernel, seed);
}

/**
 * The normal form with v0 = e1, V0 = (w1,w2,u1,u2,u3) = (e2..e6),
 * K = <w1^w2, w1^u1 + u2^u3> and W = <v0,w1,w2> in Theta.
 */
inline GraphInstance normal_form_instance(std::uint64_t seed)
{
    RatMatrix kernel(2, 10);
    kernel(0, alpha_index(0, 1)) = 1;
    kernel(1, alpha_index(0, 2)) = 1;
    kernel(1, alpha_index(3, 4)) = 1;
    GraphInstance g = graph_with_kernel(ChartBasis::standard(), kernel, seed);
    g.kernel = kernel;
    g.theta.push_back(Subspace3::span({ext::unit(0), ext::unit(1), ext::unit(2)}));
    return g;
}

} // namespace epw

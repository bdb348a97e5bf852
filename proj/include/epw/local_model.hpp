#pragma once

#include "epw/chart.hpp"
#include "epw/check.hpp"
#include "epw/poly_matrix.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace epw {

/** A chart at [v0] that is transversal for A, with the Gram data of q_A and q_v. */
struct Chart {
    ChartBasis basis;
    LagrangianFrame a;
    RatMatrix qa;        // Gram of q_A on the second power of V0
    VarNames vars;       // x1..x5, coordinates along f_0..f_4
    PolyMatrix qv;       // symbolic Gram of q_v, linear in the chart variables
};

inline VarNames chart_vars()
{
    static const VarNames v = make_vars({"x1", "x2", "x3", "x4", "x5"});
    return v;
}

inline Chart chart_from_basis(const LagrangianFrame& a, const ChartBasis& basis)
{
    if (!basis.transversal(a))
        throw std::invalid_argument("chart complement is not transversal for A");
    Chart c;
    c.basis = basis;
    c.a = a;
    c.qa = basis.gram_of(a);
    c.vars = chart_vars();
    c.qv = PolyMatrix(c.vars, 10, 10);
    for (unsigned k = 0; k < 5; ++k) {
        MultiPoly xk = MultiPoly::variable(c.vars, k);
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t j = 0; j < 10; ++j)
                if (basis.plucker()[k](i, j) != 0)
                    c.qv(i, j) += basis.plucker()[k](i, j) * xk;
    }
    return c;
}

struct ChartFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Coordinate complements first, then seeded random complements. */
inline Chart make_chart(const LagrangianFrame& a, const Vec6& v0, std::uint64_t seed = 1, int random_attempts = 64)
{
    if (v0.size() != 6 || is_zero_vector(v0))
        throw std::invalid_argument("make_chart needs a nonzero point");
    for (unsigned skip = 0; skip < 6; ++skip) {
        if (v0[skip] == 0)
            continue;
        RatMatrix f(0, 6);
        for (unsigned j = 0; j < 6; ++j)
            if (j != skip)
                f.append_row(ext::unit(j));
        ChartBasis b(v0, f);
        if (b.transversal(a))
            return chart_from_basis(a, b);
    }
    Rng rng(seed);
    for (int attempt = 0; attempt < random_attempts; ++attempt) {
        RatMatrix f = rng.matrix(5, 6);
        RatMatrix all = f;
        all.append_row(v0);
        if (rank(all) != 6)
            continue;
        ChartBasis b(v0, f);
        if (b.transversal(a))
            return chart_from_basis(a, b);
    }
    throw ChartFailure("no transversal complement found within the attempt budget: possible pathology, "
                       "the dual degeneracy locus may be the whole dual projective space");
}

struct LocalSextic {
    MultiPoly f;
    std::vector<MultiPoly> parts; // parts[i] = homogeneous part of degree i, i = 0..max(6, deg f)
};

/** f = det(q_A + q_v) in the chart coordinates. */
inline LocalSextic local_sextic(const Chart& c)
{
    PolyMatrix m = PolyMatrix::constant(c.vars, c.qa) + c.qv;
    LocalSextic s;
    s.f = det_poly_matrix(m, DetStrategy::Interpolation);
    unsigned top = static_cast<unsigned>(std::max(6, s.f.degree()));
    for (unsigned i = 0; i <= top; ++i)
        s.parts.push_back(s.f.homogeneous_part(i));
    return s;
}

struct TaylorReport {
    std::size_t k = 0;            // degeneracy at v0
    bool theta_through_v0 = false; // some supplied W in Theta contains v0
    std::vector<NamedCheck> checks;
    bool ok() const
    {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }
};

inline TaylorReport taylor_order_check(const Chart& c, const LocalSextic& s, const std::vector<Subspace3>& known_theta)
{
    TaylorReport r;
    r.k = degeneracy_dim(c.a, c.basis.v0());
    for (const auto& w : known_theta)
        if (w.contains(c.basis.v0()) && in_rowspace(c.a.rows(), w.top()))
            r.theta_through_v0 = true;
    auto part = [&](std::size_t i) { return i < s.parts.size() ? s.parts[i] : MultiPoly(c.vars); };
    if (r.theta_through_v0) {
        r.checks.push_back({"f0 = 0", part(0).is_zero()});
        r.checks.push_back({"f1 = 0", part(1).is_zero()});
    } else {
        for (std::size_t i = 0; i < r.k; ++i)
            r.checks.push_back({"f" + std::to_string(i) + " = 0", part(i).is_zero()});
        if (r.k <= 6)
            r.checks.push_back({"f" + std::to_string(r.k) + " != 0", !part(r.k).is_zero()});
        else
            r.checks.push_back({"f identically 0 (k > 6)", s.f.is_zero()});
    }
    return r;
}

inline TaylorReport taylor_order_check(const Chart& c, const std::vector<Subspace3>& known_theta)
{
    return taylor_order_check(c, local_sextic(c), known_theta);
}

/** Symmetric Gram matrix of a quadratic form given as a homogeneous polynomial. */
inline RatMatrix quadric_gram(const MultiPoly& q)
{
    unsigned n = q.nvars();
    RatMatrix g(n, n);
    for (const auto& t : q.terms()) {
        if (mono::degree(t.mono) != 2)
            throw std::invalid_argument("quadric_gram expects a homogeneous quadratic");
        std::vector<unsigned> idx;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned e = 0; e < mono::exponent(t.mono, i); ++e)
                idx.push_back(i);
        if (idx[0] == idx[1])
            g(idx[0], idx[0]) += t.coeff;
        else {
            g(idx[0], idx[1]) += t.coeff / 2;
            g(idx[1], idx[0]) += t.coeff / 2;
        }
    }
    return g;
}

struct RankF2Report {
    std::size_t rank = 0;
    std::size_t level = 0;
    bool holds = false; // rank + level == 4
};

/** Rank of the quadratic Taylor part at v0 in P(W) off the curve, against the level of W. */
inline RankF2Report rank_f2(const Chart& c, const LocalSextic& s, const Subspace3& w)
{
    const Vec6& v0 = c.basis.v0();
    if (!w.contains(v0))
        throw std::invalid_argument("chart point does not lie in W");
    if (!in_rowspace(c.a.rows(), w.top()))
        throw std::invalid_argument("third power of W is not contained in A");
    if (curve_membership(c.a, w, v0))
        throw std::invalid_argument("chart point lies on the degeneracy-2 curve of W");
    RankF2Report r;
    r.rank = rank(quadric_gram(s.parts.at(2)));
    r.level = sigma_level(c.a, w).level;
    r.holds = r.rank + r.level == 4;
    return r;
}

/** Block data of q_A + q_v in a basis adapted to the second power of V0 = J + K. */
struct SchurData {
    std::size_t k = 0;
    RatMatrix basis;   // columns: basis of J, then of K (alpha coordinates)
    RatMatrix n_j;     // q_A restricted to J
    PolyMatrix p;      // K x K block of q_v
    PolyMatrix q;      // J x J block of q_v
    PolyMatrix r;      // K x J block of q_v
    MultiPoly d;       // det(N_J + Q)
    PolyMatrix m_hat;  // D P - R adj(N_J + Q) R^t
};

/** Complement of span(K) among coordinate vectors, chosen greedily in basis order. */
inline std::vector<RatVector> coordinate_complement(const RatMatrix& kernel, std::size_t n)
{
    std::vector<RatVector> j;
    RatMatrix span = kernel;
    for (std::size_t i = 0; i < n && span.rows() < n; ++i) {
        RatVector e(n);
        e[i] = 1;
        if (in_rowspace(span, e))
            continue;
        span = vstack(span, RatMatrix(1, n, e));
        j.push_back(e);
    }
    return j;
}

/**
 * Schur reduction of q_A + q_v onto K = ker q_A. An explicit kernel basis may be
 * supplied (rows, alpha coordinates); it must span ker q_A.
 */
inline SchurData schur_complement(const Chart& c, std::optional<RatMatrix> kernel_basis = std::nullopt)
{
    RatMatrix ker = nullspace(c.qa);
    RatMatrix kb = kernel_basis ? *kernel_basis : ker;
    if (kb.rows() != ker.rows() || (kb.rows() && rank(vstack(ker, kb)) != ker.rows()) ||
        (kb.rows() && rank(kb) != kb.rows()))
        throw std::invalid_argument("supplied kernel basis does not span ker q_A");
    SchurData s;
    s.k = kb.rows();
    std::vector<RatVector> jv = coordinate_complement(kb.rows() ? kb : RatMatrix(0, 10), 10);
    std::size_t nj = jv.size();
    s.basis = RatMatrix(10, 10);
    for (std::size_t col = 0; col < 10; ++col) {
        RatVector v = col < nj ? jv[col] : kb.row(col - nj);
        for (std::size_t i = 0; i < 10; ++i)
            s.basis(i, col) = v[i];
    }
    RatMatrix bt = s.basis.transpose();
    RatMatrix nad = bt * c.qa * s.basis;
    s.n_j = nad.block(0, 0, nj, nj);
    if (determinant(s.n_j) == 0)
        throw std::logic_error("q_A restricted to the complement of its kernel is degenerate");
    std::vector<RatMatrix> gad;
    for (const auto& g : c.basis.plucker())
        gad.push_back(bt * g * s.basis);
    auto block = [&](std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) {
        PolyMatrix m(c.vars, nr, nc);
        for (unsigned a = 0; a < 5; ++a) {
            MultiPoly xa = MultiPoly::variable(c.vars, a);
            for (std::size_t i = 0; i < nr; ++i)
                for (std::size_t j = 0; j < nc; ++j)
                    if (gad[a](r0 + i, c0 + j) != 0)
                        m(i, j) += gad[a](r0 + i, c0 + j) * xa;
        }
        return m;
    };
    s.q = block(0, 0, nj, nj);
    s.r = block(nj, 0, s.k, nj);
    s.p = block(nj, nj, s.k, s.k);
    s.d = det_poly_matrix(PolyMatrix::constant(c.vars, s.n_j) + s.q);
    if (s.k == 0) {
        s.m_hat = PolyMatrix(c.vars, 0, 0);
        return s;
    }
    auto eval = [&](const std::vector<Rational>& x) {
        RatMatrix nq = s.n_j + s.q.eval(x);
        RatMatrix rx = s.r.eval(x);
        return determinant(nq) * s.p.eval(x) - rx * adjugate(nq) * rx.transpose();
    };
    s.m_hat = interpolate_matrix(c.vars, static_cast<unsigned>(nj + 1), s.k, s.k, eval);
    return s;
}

/** det(q_A + q_v) * D^{k-1} = det(M^) in the adapted basis (for k = 0, D = det(q_A + q_v)). */
inline bool schur_identity_holds(const SchurData& s, const LocalSextic& ls)
{
    Rational db = determinant(s.basis);
    MultiPoly lhs = (db * db) * ls.f;
    if (s.k == 0)
        return lhs == s.d;
    lhs = lhs * s.d.pow(static_cast<unsigned>(s.k - 1));
    return lhs == det_poly_matrix(s.m_hat);
}

struct DoubleCoverIdeal {
    VarNames vars; // chart variables then xi1..xik
    std::vector<MultiPoly> generators;
    std::string notice;
};

inline DoubleCoverIdeal double_cover_ideal(const SchurData& s)
{
    DoubleCoverIdeal out;
    std::vector<std::string> names = *chart_vars();
    for (std::size_t i = 0; i < s.k; ++i)
        names.push_back("xi" + std::to_string(i + 1));
    out.vars = make_vars(names);
    if (s.k == 0) {
        out.notice = "k = 0: the point is not on the sextic, so the cover is etale there and the ideal is empty";
        return out;
    }
    std::vector<MultiPoly> xi;
    for (std::size_t i = 0; i < s.k; ++i)
        xi.push_back(MultiPoly::variable(out.vars, static_cast<unsigned>(5 + i)));
    PolyMatrix mh(out.vars, s.k, s.k);
    for (std::size_t i = 0; i < s.k; ++i)
        for (std::size_t j = 0; j < s.k; ++j)
            mh(i, j) = s.m_hat(i, j).embed(out.vars);
    MultiPoly dk = s.d.pow(static_cast<unsigned>(s.k - 1)).embed(out.vars);
    PolyMatrix cof = adjugate_poly_matrix(mh).transpose();
    for (std::size_t i = 0; i < s.k; ++i) {
        MultiPoly g(out.vars);
        for (std::size_t j = 0; j < s.k; ++j)
            g += mh(i, j) * xi[j];
        out.generators.push_back(g);
    }
    for (std::size_t i = 0; i < s.k; ++i)
        for (std::size_t j = i; j < s.k; ++j)
            out.generators.push_back(dk * xi[i] * xi[j] - cof(i, j));
    return out;
}

struct TangentCone {
    bool through_origin = false;
    std::size_t tangent_dim = 0;     // dim of the common zero set of the linear parts
    std::size_t quadric_span = 0;    // dim of the space of quadrics restricted there
    std::vector<std::size_t> ranks;  // rank of each basis quadric
    std::size_t max_rank = 0;
};

/**
 * Quadratic parts at the origin of the combinations of generators whose linear
 * parts cancel, restricted to the common kernel of the linear parts.
 */
inline TangentCone tangent_cone(const std::vector<MultiPoly>& gens, const VarNames& vars)
{
    TangentCone tc;
    unsigned n = static_cast<unsigned>(vars->size());
    tc.through_origin = true;
    for (const auto& g : gens)
        if (g.constant_term() != 0)
            tc.through_origin = false;
    if (!tc.through_origin)
        return tc;
    RatMatrix lin(gens.size(), n);
    std::vector<RatMatrix> quad;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        MultiPoly l = gens[i].homogeneous_part(1);
        for (unsigned a = 0; a < n; ++a) {
            std::vector<unsigned> e(n, 0);
            e[a] = 1;
            lin(i, a) = l.coeff(e);
        }
        quad.push_back(quadric_gram(gens[i].homogeneous_part(2)));
    }
    RatMatrix t = nullspace(lin);
    tc.tangent_dim = t.rows();
    RatMatrix combos = nullspace(lin.transpose());
    RatMatrix flat(0, t.rows() * t.rows());
    std::vector<RatMatrix> restricted;
    for (std::size_t c = 0; c < combos.rows(); ++c) {
        RatMatrix s(n, n);
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (combos(c, i) != 0)
                s = s + combos(c, i) * quad[i];
        RatMatrix rs = t * s * t.transpose();
        if (rs.rows())
            flat.append_row(rs.data());
        restricted.push_back(rs);
    }
    RatMatrix span = row_basis(flat);
    tc.quadric_span = span.rows();
    for (std::size_t r = 0; r < span.rows(); ++r) {
        RatMatrix g(t.rows(), t.rows(), span.row(r));
        tc.ranks.push_back(rank(g));
        tc.max_rank = std::max(tc.max_rank, tc.ranks.back());
    }
    return tc;
}

} // namespace epw

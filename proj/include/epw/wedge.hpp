#pragma once

#include "epw/matrix.hpp"
#include "epw/random.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace epw {

/** Coordinates in e1..e6. */
using Vec6 = RatVector;
/** Coordinates in the lexicographic basis e_{ijk}, i<j<k. */
using Trivector = RatVector;

namespace ext {

constexpr unsigned kDim = 6;

/** Basis masks of the k-th exterior power in lexicographic order of index sets. */
inline const std::vector<unsigned>& masks(unsigned k)
{
    static const std::array<std::vector<unsigned>, kDim + 1> table = [] {
        std::array<std::vector<unsigned>, kDim + 1> t;
        // lexicographic order on sorted index tuples
        std::vector<std::vector<unsigned>> tuples[kDim + 1];
        for (unsigned m = 0; m < (1u << kDim); ++m) {
            std::vector<unsigned> idx;
            for (unsigned i = 0; i < kDim; ++i)
                if (m & (1u << i))
                    idx.push_back(i);
            tuples[idx.size()].push_back(idx);
        }
        for (unsigned d = 0; d <= kDim; ++d) {
            std::sort(tuples[d].begin(), tuples[d].end());
            for (const auto& tp : tuples[d]) {
                unsigned m = 0;
                for (unsigned i : tp)
                    m |= 1u << i;
                t[d].push_back(m);
            }
        }
        return t;
    }();
    return table.at(k);
}

inline std::size_t index_of(unsigned mask)
{
    static const std::array<std::size_t, 1u << kDim> table = [] {
        std::array<std::size_t, 1u << kDim> t{};
        for (unsigned d = 0; d <= kDim; ++d) {
            const auto& ms = masks(d);
            for (std::size_t i = 0; i < ms.size(); ++i)
                t[ms[i]] = i;
        }
        return t;
    }();
    return table[mask];
}

inline std::size_t dim(unsigned k) { return masks(k).size(); }

/** Sign of e_S ^ e_T relative to e_{S u T}. */
inline int wedge_sign(unsigned s, unsigned t)
{
    int swaps = 0;
    for (unsigned i = 0; i < kDim; ++i)
        if (s & (1u << i))
            swaps += std::popcount(t & ((1u << i) - 1));
    return (swaps % 2) ? -1 : 1;
}

/** Wedge of a k-vector and an l-vector, given in lexicographic coordinates. */
inline RatVector wedge(unsigned k, const RatVector& a, unsigned l, const RatVector& b)
{
    if (a.size() != dim(k) || b.size() != dim(l))
        throw std::invalid_argument("wedge: coordinate length does not match degree");
    if (k + l > kDim)
        return {};
    RatVector out(dim(k + l));
    const auto& ma = masks(k);
    const auto& mb = masks(l);
    for (std::size_t i = 0; i < ma.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < mb.size(); ++j) {
            if (b[j] == 0 || (ma[i] & mb[j]))
                continue;
            Rational p = a[i] * b[j];
            if (wedge_sign(ma[i], mb[j]) < 0)
                out[index_of(ma[i] | mb[j])] -= p;
            else
                out[index_of(ma[i] | mb[j])] += p;
        }
    }
    return out;
}

/** v_1 ^ ... ^ v_k for vectors of V. */
inline RatVector wedge_vectors(const std::vector<Vec6>& vs)
{
    RatVector acc{Rational(1)};
    unsigned deg = 0;
    for (const auto& v : vs) {
        acc = wedge(deg, acc, 1, v);
        ++deg;
    }
    return acc;
}

inline RatVector basis_vector(unsigned k, unsigned mask)
{
    RatVector v(dim(k));
    v[index_of(mask)] = 1;
    return v;
}

inline Vec6 unit(unsigned i)
{
    Vec6 v(kDim);
    v[i] = 1;
    return v;
}

} // namespace ext

inline Trivector trivector_unit(unsigned i, unsigned j, unsigned k)
{
    if (!(i < j && j < k && k < 6))
        throw std::invalid_argument("trivector_unit expects 0-based indices i<j<k<6");
    return ext::basis_vector(3, (1u << i) | (1u << j) | (1u << k));
}

/** Coefficient of e1^...^e6 in a ^ b. */
inline Rational symplectic_pairing(const Trivector& a, const Trivector& b)
{
    return ext::wedge(3, a, 3, b)[0];
}

/** 20x20 Gram matrix of the wedge pairing in the lexicographic basis. */
inline const RatMatrix& symplectic_gram()
{
    static const RatMatrix g = [] {
        RatMatrix m(20, 20);
        const auto& ms = ext::masks(3);
        for (std::size_t i = 0; i < 20; ++i)
            for (std::size_t j = 0; j < 20; ++j)
                if ((ms[i] | ms[j]) == 63u && !(ms[i] & ms[j]))
                    m(i, j) = ext::wedge_sign(ms[i], ms[j]);
        return m;
    }();
    return g;
}

inline bool is_isotropic(const RatMatrix& rows)
{
    if (rows.rows() == 0)
        return true;
    return (rows * symplectic_gram() * rows.transpose()).is_zero();
}

inline bool is_lagrangian(const RatMatrix& frame)
{
    return frame.cols() == 20 && rank(frame) == 10 && is_isotropic(frame);
}

/** Ten-dimensional Lagrangian subspace of the third exterior power, row-reduced. */
class LagrangianFrame {
public:
    LagrangianFrame() = default;
    explicit LagrangianFrame(const RatMatrix& generators)
    {
        if (generators.cols() != 20)
            throw std::invalid_argument("Lagrangian frame needs 20 columns");
        rows_ = row_basis(generators);
        if (rows_.rows() != 10)
            throw std::invalid_argument("Lagrangian frame must have rank 10, got rank " +
                                        std::to_string(rows_.rows()));
        if (!is_isotropic(rows_))
            throw std::invalid_argument("frame is not isotropic for the wedge pairing");
    }
    const RatMatrix& rows() const { return rows_; }
    friend bool operator==(const LagrangianFrame& a, const LagrangianFrame& b) { return a.rows_ == b.rows_; }

private:
    RatMatrix rows_;
};

/** Row-reduced basis of a 3-dimensional subspace of V. */
class Subspace3 {
public:
    Subspace3() = default;
    explicit Subspace3(const RatMatrix& generators)
    {
        if (generators.cols() != 6)
            throw std::invalid_argument("subspace generators need 6 columns");
        rows_ = row_basis(generators);
        if (rows_.rows() != 3)
            throw std::invalid_argument("subspace must have rank 3, got rank " + std::to_string(rows_.rows()));
    }
    static Subspace3 span(const std::vector<Vec6>& vs) { return Subspace3(RatMatrix::from_rows(vs, 6)); }
    const RatMatrix& rows() const { return rows_; }
    bool contains(const Vec6& v) const { return in_rowspace(rows_, v); }
    /** The decomposable w1^w2^w3 spanning the third power of W. */
    Trivector top() const { return ext::wedge_vectors({rows_.row(0), rows_.row(1), rows_.row(2)}); }
    friend bool operator==(const Subspace3& a, const Subspace3& b) { return a.rows_ == b.rows_; }

private:
    RatMatrix rows_;
};

inline bool is_zero_vector(const RatVector& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

/** Rows v ^ e_ij spanning v ^ (second power of V); rank 10 for v != 0. */
inline RatMatrix v_wedge_bivectors(const Vec6& v)
{
    RatMatrix m(0, 20);
    for (unsigned mask : ext::masks(2))
        m.append_row(ext::wedge(1, v, 2, ext::basis_vector(2, mask)));
    return m;
}

/** Rows spanning (second power of W) ^ V, a 10-dimensional Lagrangian. */
inline RatMatrix w2_wedge_v(const Subspace3& w)
{
    RatMatrix m(0, 20);
    const RatMatrix& b = w.rows();
    for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = i + 1; j < 3; ++j)
            for (unsigned k = 0; k < 6; ++k)
                m.append_row(ext::wedge_vectors({b.row(i), b.row(j), ext::unit(k)}));
    return row_basis(m);
}

inline std::size_t intersection_dim(const RatMatrix& a, const RatMatrix& b)
{
    return rank(a) + rank(b) - rank(vstack(a, b));
}

/** dim(A ∩ (v ^ second power of V)). */
inline std::size_t degeneracy_dim(const LagrangianFrame& a, const Vec6& v)
{
    if (is_zero_vector(v))
        throw std::invalid_argument("degeneracy_dim needs a nonzero vector");
    return 20 - rank(vstack(a.rows(), v_wedge_bivectors(v)));
}

/** Matrix of v -> v ^ t, as a 15x6 map into the fourth power. */
inline RatMatrix annihilator_map(const Trivector& t)
{
    RatMatrix m(15, 6);
    for (unsigned i = 0; i < 6; ++i) {
        RatVector c = ext::wedge(1, ext::unit(i), 3, t);
        for (std::size_t r = 0; r < 15; ++r)
            m(r, i) = c[r];
    }
    return m;
}

/** W with t in the third power of W, when t is decomposable. */
inline std::optional<Subspace3> decompose_trivector(const Trivector& t)
{
    if (t.size() != 20)
        throw std::invalid_argument("trivector needs 20 coordinates");
    if (is_zero_vector(t))
        throw std::invalid_argument("decompose_trivector needs a nonzero trivector");
    RatMatrix ker = nullspace(annihilator_map(t));
    if (ker.rows() != 3)
        return std::nullopt;
    return Subspace3(ker);
}

struct SigmaLevel {
    bool theta = false;   // third power of W contained in A
    std::size_t level = 0; // dim(A ∩ (second power of W) ^ V)
};

inline SigmaLevel sigma_level(const LagrangianFrame& a, const Subspace3& w)
{
    SigmaLevel s;
    s.theta = in_rowspace(a.rows(), w.top());
    s.level = intersection_dim(a.rows(), w2_wedge_v(w));
    return s;
}

/** Rows spanning the third power of a 5-space E. */
inline RatMatrix third_power(const RatMatrix& e)
{
    RatMatrix m(0, 20);
    for (unsigned i = 0; i < e.rows(); ++i)
        for (unsigned j = i + 1; j < e.rows(); ++j)
            for (unsigned k = j + 1; k < e.rows(); ++k)
                m.append_row(ext::wedge_vectors({e.row(i), e.row(j), e.row(k)}));
    return m;
}

/** Whether the third power of E meets A nontrivially, by a stacked rank test. */
inline bool dual_membership(const LagrangianFrame& a, const RatMatrix& e)
{
    if (e.cols() != 6 || rank(e) != 5)
        throw std::invalid_argument("dual_membership needs a rank-5 subspace of V");
    RatMatrix e5 = row_basis(e);
    return rank(vstack(a.rows(), third_power(e5))) < 20;
}

/**
 * Same predicate computed on the dual side: the annihilator of A in the dual third
 * power meets phi ^ (second power of the dual) nontrivially, where phi cuts out E.
 */
inline bool dual_membership_via_annihilator(const LagrangianFrame& a, const RatMatrix& e)
{
    if (e.cols() != 6 || rank(e) != 5)
        throw std::invalid_argument("dual_membership needs a rank-5 subspace of V");
    RatMatrix ann = nullspace(a.rows()); // dual basis coordinates pair by dot product
    RatVector phi = nullspace(e).row(0);
    RatMatrix phi_wedge = v_wedge_bivectors(phi);
    return intersection_dim(ann, phi_wedge) > 0;
}

inline void require_in(const Subspace3& w, const Vec6& v)
{
    if (is_zero_vector(v))
        throw std::invalid_argument("point must be a nonzero vector");
    if (!w.contains(v))
        throw std::invalid_argument("point does not lie in W");
}

/** Pointwise support of the curve attached to W: degeneracy at least 2. */
inline bool curve_membership(const LagrangianFrame& a, const Subspace3& w, const Vec6& v)
{
    require_in(w, v);
    if (!in_rowspace(a.rows(), w.top()))
        throw std::invalid_argument("third power of W is not contained in A");
    return degeneracy_dim(a, v) >= 2;
}

struct BscriptResult {
    bool member = false;
    bool via_theta_list = false;   // some other supplied W' contains the point
    bool via_triple = false;       // the triple intersection has dimension >= 2
    std::size_t triple_dim = 0;
    /** Clause 1 was decided only against the caller's list of elements of Theta. */
    bool relative_to_supplied_theta = true;
};

inline BscriptResult bscript_membership(const LagrangianFrame& a, const Subspace3& w,
                                        const std::vector<Subspace3>& known_theta, const Vec6& v)
{
    require_in(w, v);
    BscriptResult r;
    for (const auto& other : known_theta)
        if (!(other == w) && other.contains(v))
            r.via_theta_list = true;
    RatMatrix av = intersect_rowspaces(a.rows(), v_wedge_bivectors(v));
    r.triple_dim = intersection_dim(av, w2_wedge_v(w));
    r.via_triple = r.triple_dim >= 2;
    r.member = r.via_theta_list || r.via_triple;
    return r;
}

inline bool curve_smooth_at(const LagrangianFrame& a, const Subspace3& w, const std::vector<Subspace3>& known_theta,
                            const Vec6& v)
{
    require_in(w, v);
    if (!in_rowspace(a.rows(), w.top()))
        throw std::invalid_argument("third power of W is not contained in A");
    return degeneracy_dim(a, v) == 2 && !bscript_membership(a, w, known_theta, v).member;
}

/** Random integer combination of the rows of a basis. */
inline RatVector random_combination(Rng& rng, const RatMatrix& basis)
{
    RatVector v(basis.cols());
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        long c = rng.coeff();
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < basis.cols(); ++j)
            v[j] += Rational(c) * basis(i, j);
    }
    return v;
}

/** Symplectic complement of a span of trivectors. */
inline RatMatrix symplectic_perp(const RatMatrix& rows)
{
    if (rows.rows() == 0)
        return RatMatrix::identity(20);
    return nullspace(rows * symplectic_gram());
}

struct ContainingConstraints {
    std::size_t level = 1;             // target dim(A ∩ (second power of W) ^ V)
    std::vector<Trivector> extra;      // further trivectors A must contain
    int attempts = 64;
};

/** Seeded random Lagrangian containing the third power of W with a prescribed level. */
inline LagrangianFrame lagrangian_containing(const Subspace3& w, const ContainingConstraints& c, std::uint64_t seed)
{
    if (c.level < 1 || c.level > 10)
        throw std::invalid_argument("target level must lie in 1..10");
    RatMatrix base(0, 20);
    base.append_row(w.top());
    for (const auto& t : c.extra)
        base.append_row(t);
    base = row_basis(base);
    if (!is_isotropic(base))
        throw std::runtime_error("infeasible constraints: prescribed trivectors are not isotropic");
    RatMatrix f = w2_wedge_v(w);
    if (intersection_dim(base, f) > c.level)
        throw std::runtime_error("infeasible constraints: prescribed trivectors already exceed the level");
    Rng rng(seed);
    for (int attempt = 0; attempt < c.attempts; ++attempt) {
        RatMatrix cur = base;
        bool stuck = false;
        while (intersection_dim(cur, f) < c.level) {
            RatMatrix cand = intersect_rowspaces(f, symplectic_perp(cur));
            RatVector v = random_combination(rng, cand);
            if (in_rowspace(cur, v)) {
                if (rank(vstack(cur, cand)) == rank(cur)) {
                    stuck = true;
                    break;
                }
                continue;
            }
            cur.append_row(v);
        }
        if (stuck)
            break;
        int guard = 0;
        while (cur.rows() < 10 && guard++ < 200) {
            RatVector v = random_combination(rng, symplectic_perp(cur));
            if (in_rowspace(cur, v))
                continue;
            cur.append_row(v);
            cur = row_basis(cur);
        }
        if (cur.rows() != 10)
            continue;
        LagrangianFrame a(cur);
        SigmaLevel s = sigma_level(a, w);
        if (s.theta && s.level == c.level)
            return a;
    }
    throw std::runtime_error("infeasible constraints: no Lagrangian with the requested level found");
}

} // namespace epw

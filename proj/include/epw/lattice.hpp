#pragma once

#include "epw/matrix.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace epw {

// ---------------------------------------------------------------------------
// Integer linear algebra

/** U a V = diag, with U and V unimodular; v_inv is V^{-1}. */
struct SmithForm {
    IntMatrix u, v, v_inv;
    std::vector<Integer> diag; // nonzero invariant factors d_1 | d_2 | ...
    std::size_t rank() const { return diag.size(); }
};

inline SmithForm smith_normal_form(IntMatrix a)
{
    std::size_t m = a.rows(), n = a.cols();
    SmithForm s{IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n), {}};
    auto row_op = [&](std::size_t dst, std::size_t src, const Integer& k) { // row dst += k row src
        for (std::size_t j = 0; j < n; ++j)
            a(dst, j) += k * a(src, j);
        for (std::size_t j = 0; j < m; ++j)
            s.u(dst, j) += k * s.u(src, j);
    };
    auto col_op = [&](std::size_t dst, std::size_t src, const Integer& k) { // col dst += k col src
        for (std::size_t i = 0; i < m; ++i)
            a(i, dst) += k * a(i, src);
        for (std::size_t i = 0; i < n; ++i)
            s.v(i, dst) += k * s.v(i, src);
        for (std::size_t j = 0; j < n; ++j)
            s.v_inv(src, j) -= k * s.v_inv(dst, j);
    };
    auto swap_cols = [&](std::size_t x, std::size_t y) {
        if (x == y)
            return;
        for (std::size_t i = 0; i < m; ++i)
            std::swap(a(i, x), a(i, y));
        for (std::size_t i = 0; i < n; ++i)
            std::swap(s.v(i, x), s.v(i, y));
        s.v_inv.swap_rows(x, y);
    };
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a(i, j) != 0 && (pi == m || abs(a(i, j)) < abs(a(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m)
                goto done;
            if (pi != t) {
                a.swap_rows(pi, t);
                s.u.swap_rows(pi, t);
            }
            swap_cols(pj, t);
            bool clean = true;
            Integer q;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a(i, t) == 0)
                    continue;
                mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                row_op(i, t, -q);
                clean = clean && a(i, t) == 0;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0)
                    continue;
                mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                col_op(j, t, -q);
                clean = clean && a(t, j) == 0;
            }
            if (!clean)
                continue;
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m)
                break;
            row_op(t, bad, 1);
        }
        if (a(t, t) < 0) {
            for (std::size_t j = 0; j < n; ++j)
                a(t, j) = -a(t, j);
            for (std::size_t j = 0; j < m; ++j)
                s.u(t, j) = -s.u(t, j);
        }
        s.diag.push_back(a(t, t));
    }
done:
    return s;
}

/** Rows form a basis of {x in Z^n : a x = 0}. */
inline IntMatrix integer_kernel(const IntMatrix& a)
{
    SmithForm s = smith_normal_form(a);
    std::size_t n = a.cols();
    IntMatrix k(0, n);
    for (std::size_t j = s.rank(); j < n; ++j) {
        IntVector col(n);
        for (std::size_t i = 0; i < n; ++i)
            col[i] = s.v(i, j);
        k.append_row(col);
    }
    return k;
}

inline Integer gcd_of(const IntVector& v)
{
    Integer g = 0;
    for (const auto& x : v)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

inline bool is_primitive(const IntVector& v) { return gcd_of(v) == 1; }

/** Basis (rows) of the Z-span of the rows of a rational matrix of full column rank. */
inline RatMatrix lattice_basis(const RatMatrix& gens)
{
    Integer den = 1;
    for (const auto& x : gens.data())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    IntMatrix a(gens.rows(), gens.cols());
    for (std::size_t i = 0; i < gens.rows(); ++i)
        for (std::size_t j = 0; j < gens.cols(); ++j) {
            Rational s = gens(i, j) * den;
            a(i, j) = s.get_num();
        }
    SmithForm s = smith_normal_form(a);
    if (s.rank() != gens.cols())
        throw std::invalid_argument("generators do not have full rank");
    // row span of a = row span of D V^{-1}
    RatMatrix b(s.rank(), gens.cols());
    for (std::size_t i = 0; i < s.rank(); ++i)
        for (std::size_t j = 0; j < gens.cols(); ++j)
            b(i, j) = Rational(s.diag[i] * s.v_inv(i, j)) / den;
    return b;
}

/** Coordinates of the rows of `sub` in the basis `super` (rows), if every row lies in its Q-span. */
inline std::optional<RatMatrix> coordinates_in(const RatMatrix& sub, const RatMatrix& super)
{
    auto x = solve(super.transpose(), sub.transpose());
    if (!x || !(x->transpose() * super == sub))
        return std::nullopt;
    return x->transpose();
}

inline bool is_integral(const RatMatrix& m)
{
    for (const auto& x : m.data())
        if (!is_integer(x))
            return false;
    return true;
}

/** True when the two bases span the same lattice. */
inline bool same_span(const RatMatrix& a, const RatMatrix& b)
{
    auto ab = coordinates_in(a, b), ba = coordinates_in(b, a);
    return ab && ba && is_integral(*ab) && is_integral(*ba);
}

/** Numbers of positive and negative squares in a diagonalization of a symmetric form. */
inline std::pair<std::size_t, std::size_t> signature(const RatMatrix& g)
{
    RatMatrix a = g;
    std::size_t n = a.rows(), pos = 0, neg = 0;
    std::vector<bool> alive(n, true);
    for (std::size_t left = n; left > 0; --left) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n && p == n; ++i)
            if (alive[i] && a(i, i) != 0)
                p = i;
        if (p == n) {
            // every remaining diagonal entry vanishes; fold an off-diagonal one onto the diagonal
            std::size_t fi = n, fj = n;
            for (std::size_t i = 0; i < n && fi == n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (alive[i] && alive[j] && i != j && a(i, j) != 0) {
                        fi = i;
                        fj = j;
                        break;
                    }
            if (fi == n)
                break;
            for (std::size_t k = 0; k < n; ++k)
                a(fi, k) += a(fj, k);
            for (std::size_t k = 0; k < n; ++k)
                a(k, fi) += a(k, fj);
            p = fi;
        }
        Rational piv = a(p, p);
        (piv > 0 ? pos : neg) += 1;
        alive[p] = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i] || a(i, p) == 0)
                continue;
            Rational f = a(i, p) / piv;
            for (std::size_t j = 0; j < n; ++j)
                if (alive[j])
                    a(i, j) -= f * a(p, j);
        }
        for (std::size_t j = 0; j < n; ++j)
            a(p, j) = a(j, p) = 0;
    }
    return {pos, neg};
}

// ---------------------------------------------------------------------------
// Lattices

/** Even lattice: symmetric integer Gram matrix with even diagonal, plus named vectors. */
class EvenLattice {
public:
    EvenLattice() = default;
    explicit EvenLattice(IntMatrix gram, std::map<std::string, IntVector> named = {})
        : gram_(std::move(gram)), named_(std::move(named))
    {
        if (!gram_.is_symmetric())
            throw std::invalid_argument("lattice Gram matrix must be square and symmetric");
        for (std::size_t i = 0; i < gram_.rows(); ++i)
            if (gram_(i, i) % 2 != 0)
                throw std::invalid_argument("lattice is not even");
        for (const auto& [name, v] : named_)
            if (v.size() != gram_.rows())
                throw std::invalid_argument("named vector '" + name + "' has the wrong length");
    }

    std::size_t rank() const { return gram_.rows(); }
    const IntMatrix& gram() const { return gram_; }
    RatMatrix gram_q() const { return to_rational(gram_); }
    const std::map<std::string, IntVector>& named() const { return named_; }
    const IntVector& vec(const std::string& name) const
    {
        auto it = named_.find(name);
        if (it == named_.end())
            throw std::out_of_range("lattice has no named vector '" + name + "'");
        return it->second;
    }
    bool has(const std::string& name) const { return named_.count(name) > 0; }
    Integer pair(const IntVector& x, const IntVector& y) const { return bilinear(gram_, x, y); }
    Integer square(const IntVector& x) const { return pair(x, x); }
    Rational pair(const RatVector& x, const RatVector& y) const { return bilinear(gram_q(), x, y); }
    /** (v, e_i) for every basis vector. */
    IntVector pairings(const IntVector& v) const { return gram_.apply(v); }
    Integer det() const { return determinant(gram_q()).get_num(); }
    std::pair<std::size_t, std::size_t> sig() const { return signature(gram_q()); }

private:
    IntMatrix gram_;
    std::map<std::string, IntVector> named_;
};

/** A lattice given by a basis (rows) inside the rational span of an ambient lattice. */
struct EmbeddedLattice {
    EvenLattice lattice;
    RatMatrix basis;
};

inline EmbeddedLattice embed(const RatMatrix& basis, const EvenLattice& ambient,
                             std::map<std::string, IntVector> named = {})
{
    RatMatrix g = basis * ambient.gram_q() * basis.transpose();
    if (!is_integral(g))
        throw std::invalid_argument("basis does not span an integral lattice");
    IntMatrix gi(g.rows(), g.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            gi(i, j) = g(i, j).get_num();
    return {EvenLattice(gi, std::move(named)), basis};
}

// ---------------------------------------------------------------------------
// Discriminant groups

/** D(L) = L^dual / L as a product of cyclic groups Z/d_i, d_i > 1. */
class DiscGroup {
public:
    DiscGroup() = default;
    explicit DiscGroup(const EvenLattice& l) : gram_(l.gram_q())
    {
        if (determinant(gram_) == 0)
            throw std::invalid_argument("degenerate Gram matrix has no discriminant group");
        SmithForm s = smith_normal_form(l.gram());
        std::size_t n = l.rank();
        for (std::size_t i = 0; i < n; ++i) {
            if (s.diag[i] == 1)
                continue;
            factors_.push_back(s.diag[i]);
            RatVector g(n), row(n);
            for (std::size_t r = 0; r < n; ++r)
                g[r] = Rational(s.v(r, i)) / s.diag[i];
            for (std::size_t c = 0; c < n; ++c)
                row[c] = Rational(s.diag[i] * s.v_inv(i, c));
            gens_.push_back(g);
            to_coords_.push_back(row);
        }
        unit_rows_.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (s.diag[i] == 1) {
                RatVector row(n);
                for (std::size_t c = 0; c < n; ++c)
                    row[c] = Rational(s.v_inv(i, c));
                unit_rows_.push_back(row);
            }
    }

    const std::vector<Integer>& factors() const { return factors_; }
    const std::vector<RatVector>& generators() const { return gens_; }
    Integer order() const
    {
        Integer o = 1;
        for (const auto& d : factors_)
            o *= d;
        return o;
    }
    std::size_t length() const { return factors_.size(); }

    /** Coordinates of x in L^dual modulo L; throws if x is not in the dual lattice. */
    std::vector<Integer> coords(const RatVector& x) const
    {
        for (const auto& r : unit_rows_)
            if (!is_integer(dot(r, x)))
                throw std::invalid_argument("vector is not in the dual lattice");
        std::vector<Integer> c;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            Rational v = dot(to_coords_[i], x);
            if (!is_integer(v))
                throw std::invalid_argument("vector is not in the dual lattice");
            Integer z = v.get_num() % factors_[i];
            if (z < 0)
                z += factors_[i];
            c.push_back(z);
        }
        return c;
    }
    RatVector lift(const std::vector<Integer>& c) const
    {
        RatVector x(gram_.rows());
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t r = 0; r < x.size(); ++r)
                x[r] += Rational(c[i]) * gens_[i][r];
        return x;
    }
    /** q value in [0, 2). */
    Rational q(const std::vector<Integer>& c) const
    {
        RatVector x = lift(c);
        return mod_rational(bilinear(gram_, x, x), 2);
    }
    /** b value in [0, 1). */
    Rational b(const std::vector<Integer>& c1, const std::vector<Integer>& c2) const
    {
        return mod_rational(bilinear(gram_, lift(c1), lift(c2)), 1);
    }
    std::vector<Integer> add(const std::vector<Integer>& a, const std::vector<Integer>& c) const
    {
        std::vector<Integer> s(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            s[i] = (a[i] + c[i]) % factors_[i];
        return s;
    }
    static bool is_zero(const std::vector<Integer>& c)
    {
        for (const auto& x : c)
            if (x != 0)
                return false;
        return true;
    }
    std::vector<Integer> zero() const { return std::vector<Integer>(factors_.size(), Integer(0)); }

    /** Every element; refuses groups of order above `limit`. */
    std::vector<std::vector<Integer>> elements(unsigned long limit = 4096) const
    {
        if (order() > limit)
            throw std::length_error("discriminant group too large to enumerate");
        std::vector<std::vector<Integer>> out{zero()};
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            std::vector<std::vector<Integer>> next;
            for (const auto& e : out)
                for (Integer k = 0; k < factors_[i]; ++k) {
                    auto f = e;
                    f[i] = k;
                    next.push_back(f);
                }
            out = std::move(next);
        }
        return out;
    }
    /** Elements killed by 2. */
    std::vector<std::vector<Integer>> two_torsion() const
    {
        std::vector<std::vector<Integer>> out{zero()};
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i] % 2 != 0)
                continue;
            std::size_t cur = out.size();
            for (std::size_t k = 0; k < cur; ++k) {
                auto f = out[k];
                f[i] = factors_[i] / 2;
                out.push_back(f);
            }
        }
        return out;
    }
    /** Image coordinates of each generator under an integral map of L (columns act on coordinates). */
    std::vector<std::vector<Integer>> action(const IntMatrix& g) const
    {
        RatMatrix gq = to_rational(g);
        std::vector<std::vector<Integer>> out;
        for (const auto& x : gens_)
            out.push_back(coords(gq.apply(x)));
        return out;
    }
    bool acts_trivially(const IntMatrix& g) const
    {
        auto img = action(g);
        for (std::size_t i = 0; i < img.size(); ++i) {
            std::vector<Integer> e = zero();
            e[i] = 1;
            if (img[i] != e)
                return false;
        }
        return true;
    }

private:
    RatMatrix gram_;
    std::vector<Integer> factors_;
    std::vector<RatVector> gens_;
    std::vector<RatVector> to_coords_;
    std::vector<RatVector> unit_rows_;
};

inline DiscGroup disc_group(const EvenLattice& l) { return DiscGroup(l); }

/**
 * All automorphisms of (D, q), each given by the images of the generators.
 * Enumerated by brute force, so only for small groups.
 */
inline std::vector<std::vector<std::vector<Integer>>> disc_form_automorphisms(const DiscGroup& d)
{
    auto elems = d.elements(256);
    std::vector<std::vector<std::vector<Integer>>> out;
    std::size_t r = d.length();
    std::vector<std::vector<Integer>> choice(r);
    auto image_of = [&](const std::vector<Integer>& e) {
        std::vector<Integer> s = d.zero();
        for (std::size_t i = 0; i < r; ++i)
            for (Integer k = 0; k < e[i]; ++k)
                s = d.add(s, choice[i]);
        return s;
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == r) {
            std::vector<std::vector<Integer>> seen;
            for (const auto& e : elems) {
                auto im = image_of(e);
                if (d.q(im) != d.q(e))
                    return;
                seen.push_back(im);
            }
            std::sort(seen.begin(), seen.end());
            if (std::unique(seen.begin(), seen.end()) != seen.end())
                return;
            out.push_back(choice);
            return;
        }
        for (const auto& e : elems) {
            // the image must be killed by the order of the generator
            std::vector<Integer> m = d.zero();
            for (Integer k = 0; k < d.factors()[i]; ++k)
                m = d.add(m, e);
            if (!DiscGroup::is_zero(m))
                continue;
            choice[i] = e;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Vectors: divisibility, roots, reflections

struct Divisibility {
    Integer div;
    std::vector<Integer> star; // v / div in D(L) coordinates
};

inline Divisibility divisibility_and_star(const IntVector& v, const EvenLattice& l, const DiscGroup& d)
{
    if (v.size() != l.rank())
        throw std::invalid_argument("vector has the wrong length");
    if (gcd_of(v) == 0)
        throw std::invalid_argument("zero vector has no divisibility");
    if (!is_primitive(v))
        throw std::invalid_argument("vector is not primitive");
    Divisibility out;
    out.div = gcd_of(l.pairings(v));
    RatVector x = to_rational(v);
    for (auto& c : x)
        c /= out.div;
    out.star = d.coords(x);
    return out;
}

inline Divisibility divisibility_and_star(const IntVector& v, const EvenLattice& l)
{
    return divisibility_and_star(v, l, DiscGroup(l));
}

/** Matrix of x -> x - 2 (x, v)/(v, v) v acting on coordinate columns. */
inline RatMatrix reflection_matrix(const IntVector& v, const EvenLattice& l)
{
    Integer vv = l.square(v);
    if (vv == 0)
        throw std::invalid_argument("isotropic vectors have no reflection");
    IntVector gv = l.pairings(v);
    std::size_t n = l.rank();
    RatMatrix r = RatMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r(i, j) -= Rational(2 * v[i] * gv[j]) / vv;
    return r;
}

/** v is a root when its reflection preserves L. */
inline bool is_root(const IntVector& v, const EvenLattice& l)
{
    if (!is_primitive(v))
        throw std::invalid_argument("vector is not primitive");
    return is_integral(reflection_matrix(v, l));
}

/** Same predicate through divisibility: |v^2|/2 divides div(v). */
inline bool is_root_by_divisibility(const IntVector& v, const EvenLattice& l)
{
    Integer vv = l.square(v);
    if (vv == 0)
        throw std::invalid_argument("isotropic vectors have no reflection");
    Integer half = abs(vv) / 2;
    return gcd_of(l.pairings(v)) % half == 0;
}

struct Reflection {
    IntMatrix matrix;
    bool stable = false;
};

/** Reflection in a square-2 vector; stable means trivial on D(L). */
inline Reflection reflection(const IntVector& v0, const EvenLattice& l)
{
    if (l.square(v0) != 2)
        throw std::invalid_argument("reflection expects a vector of square 2");
    RatMatrix r = reflection_matrix(v0, l);
    Reflection out;
    out.matrix = IntMatrix(r.rows(), r.cols());
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j)
            out.matrix(i, j) = r(i, j).get_num();
    out.stable = DiscGroup(l).acts_trivially(out.matrix);
    return out;
}

inline bool is_isometry(const IntMatrix& g, const EvenLattice& l)
{
    return g.transpose() * l.gram() * g == l.gram();
}

/** Two mutually orthogonal hyperbolic pairs among the basis vectors, if present. */
inline std::optional<std::array<std::size_t, 4>> u2_certificate(const EvenLattice& l)
{
    const IntMatrix& g = l.gram();
    std::size_t n = l.rank();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (g(i, i) == 0 && g(j, j) == 0 && abs(g(i, j)) == 1)
                pairs.push_back({i, j});
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            auto [i, j] = pairs[a];
            auto [k, m] = pairs[b];
            if (i == k || i == m || j == k || j == m)
                continue;
            if (g(i, k) == 0 && g(i, m) == 0 && g(j, k) == 0 && g(j, m) == 0)
                return std::array<std::size_t, 4>{i, j, k, m};
        }
    return std::nullopt;
}

/** Same square and same v* in D(L); valid as an orbit test when L contains U^2. */
inline bool eichler_equivalent(const IntVector& v1, const IntVector& v2, const EvenLattice& l)
{
    if (!u2_certificate(l))
        throw std::invalid_argument("no U^2 certificate: two orthogonal hyperbolic pairs of basis vectors are required");
    DiscGroup d(l);
    auto a = divisibility_and_star(v1, l, d), b = divisibility_and_star(v2, l, d);
    return l.square(v1) == l.square(v2) && a.star == b.star;
}

enum class RootTag { S2_STAR, S2_PRIME, S2_DPRIME, S4 };

inline std::string to_string(RootTag t)
{
    switch (t) {
    case RootTag::S2_STAR:
        return "S2_STAR";
    case RootTag::S2_PRIME:
        return "S2_PRIME";
    case RootTag::S2_DPRIME:
        return "S2_DPRIME";
    case RootTag::S4:
        return "S4";
    }
    return "?";
}

struct ClassificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Orbit tag of a negative root of a lattice carrying named vectors e1, e2 of square -2 and divisibility 2. */
inline RootTag classify_negative_root(const IntVector& v, const EvenLattice& l, const DiscGroup& d)
{
    Integer vv = l.square(v);
    if (vv >= 0 || !is_root(v, l))
        throw std::invalid_argument("vector is not a negative root");
    if (!l.has("e1") || !l.has("e2"))
        throw std::invalid_argument("classification needs named vectors e1 and e2");
    Divisibility dv = divisibility_and_star(v, l, d);
    auto half = [&](const IntVector& x) {
        RatVector r = to_rational(x);
        for (auto& c : r)
            c /= 2;
        return d.coords(r);
    };
    auto e1 = half(l.vec("e1")), e2 = half(l.vec("e2"));
    if (vv == -2 && dv.div == 1 && DiscGroup::is_zero(dv.star))
        return RootTag::S2_STAR;
    if (vv == -2 && dv.div == 2 && dv.star == e1)
        return RootTag::S2_PRIME;
    if (vv == -2 && dv.div == 2 && dv.star == e2)
        return RootTag::S2_DPRIME;
    if (vv == -4 && dv.div == 2 && dv.star == d.add(e1, e2))
        return RootTag::S4;
    throw ClassificationError("root invariants (square " + vv.get_str() + ", divisibility " + dv.div.get_str() +
                              ") match none of the four orbits");
}

inline RootTag classify_negative_root(const IntVector& v, const EvenLattice& l)
{
    return classify_negative_root(v, l, DiscGroup(l));
}

/** v^perp in L, in a basis from the integer kernel of (v, .). */
inline EmbeddedLattice orth_complement(const IntVector& v, const EvenLattice& l)
{
    if (!is_primitive(v))
        throw std::invalid_argument("vector is not primitive");
    IntMatrix row(1, l.rank(), l.pairings(v));
    IntMatrix k = integer_kernel(row);
    return embed(to_rational(k), l);
}

/** Orthogonal complement of several vectors. */
inline EmbeddedLattice orth_complement(const std::vector<IntVector>& vs, const EvenLattice& l)
{
    IntMatrix rows(0, l.rank());
    for (const auto& v : vs)
        rows.append_row(l.pairings(v));
    return embed(to_rational(integer_kernel(rows)), l);
}

struct Overlattice {
    EmbeddedLattice lattice;   // basis in coordinates of the original lattice
    std::vector<Integer> glue; // isotropic element of D(L) that was adjoined
    Integer index;
};

/** L + Z x for each isotropic element x of order 2 in D(L). */
inline std::vector<Overlattice> overlattices(const EvenLattice& l)
{
    DiscGroup d(l);
    std::vector<Overlattice> out;
    for (const auto& x : d.two_torsion()) {
        if (DiscGroup::is_zero(x) || d.q(x) != 0)
            continue;
        RatMatrix gens = RatMatrix::identity(l.rank());
        gens.append_row(d.lift(x));
        RatMatrix basis = lattice_basis(gens);
        Overlattice o{embed(basis, l), x, 2};
        out.push_back(std::move(o));
    }
    return out;
}

struct IndexCheck {
    Integer index;
    Integer disc_sub;
    Integer disc_super;
    bool holds = false; // disc_sub = index^2 * disc_super
};

/** Index of a full-rank sublattice given by its basis in coordinates of the larger lattice. */
inline IndexCheck sublattice_index_and_discr(const RatMatrix& sub_basis, const EvenLattice& super)
{
    if (sub_basis.cols() != super.rank() || sub_basis.rows() != super.rank())
        throw std::invalid_argument("sublattice must have full rank");
    if (!is_integral(sub_basis))
        throw std::invalid_argument("sublattice basis is not integral in the larger lattice");
    Rational det = determinant(sub_basis);
    if (det == 0)
        throw std::invalid_argument("sublattice must have full rank");
    IndexCheck c;
    c.index = Rational(abs(det)).get_num();
    c.disc_super = super.det();
    c.disc_sub = embed(sub_basis, super).lattice.det();
    c.holds = c.disc_sub == c.index * c.index * c.disc_super;
    return c;
}

struct IotaSwap {
    IntMatrix matrix;
    bool isometry = false;
    bool stable = false;
    std::vector<std::vector<Integer>> on_disc; // images of the generators of D
};

/** The involution exchanging e1 and e2 and fixing their orthogonal complement. */
inline IotaSwap iota_swap(const EvenLattice& l)
{
    const IntVector &e1 = l.vec("e1"), &e2 = l.vec("e2");
    EmbeddedLattice perp = orth_complement(std::vector<IntVector>{e1, e2}, l);
    std::size_t n = l.rank();
    RatMatrix p(n, n); // columns: e1, e2, then a basis of the complement
    for (std::size_t i = 0; i < n; ++i) {
        p(i, 0) = e1[i];
        p(i, 1) = e2[i];
        for (std::size_t c = 0; c + 2 < n; ++c)
            p(i, c + 2) = perp.basis(c, i);
    }
    RatMatrix s = RatMatrix::identity(n);
    s(0, 0) = s(1, 1) = 0;
    s(0, 1) = s(1, 0) = 1;
    auto pinv = inverse(p);
    if (!pinv)
        throw std::logic_error("e1, e2 and their complement do not span");
    RatMatrix g = p * s * *pinv;
    if (!is_integral(g))
        throw std::logic_error("swap is not integral on this lattice");
    IotaSwap out;
    out.matrix = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.matrix(i, j) = g(i, j).get_num();
    out.isometry = is_isometry(out.matrix, l);
    DiscGroup d(l);
    out.on_disc = d.action(out.matrix);
    out.stable = d.acts_trivially(out.matrix);
    return out;
}

// ---------------------------------------------------------------------------
// Named lattices

inline IntMatrix hyperbolic_plane() { return IntMatrix{{0, 1}, {1, 0}}; }

/** Negative of the E8 Cartan matrix (chain 0-1-2-3-4-5-6, node 7 attached to node 4). */
inline IntMatrix e8_negative()
{
    IntMatrix g(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
        g(i, i) = -2;
    auto link = [&](std::size_t a, std::size_t b) { g(a, b) = g(b, a) = 1; };
    for (std::size_t i = 0; i + 1 < 7; ++i)
        link(i, i + 1);
    link(4, 7);
    return g;
}

inline IntMatrix direct_sum(const std::vector<IntMatrix>& blocks)
{
    std::size_t n = 0;
    for (const auto& b : blocks)
        n += b.rows();
    IntMatrix g(n, n);
    std::size_t o = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                g(o + i, o + j) = b(i, j);
        o += b.rows();
    }
    return g;
}

namespace detail {

inline IntVector unit_vec(std::size_t n, std::initializer_list<std::pair<std::size_t, long>> entries)
{
    IntVector v(n);
    for (auto [i, c] : entries)
        v[i] = c;
    return v;
}

} // namespace detail

/**
 * U^3 + E8(-1)^2 + (-2) with summands J (0,1), M (2,3), N (4,5), E8 (6..13, 14..21), (-2) (22).
 * Named: v1 = u_J + u'_J, e1 = u_J - u'_J, e2 the (-2) generator, e3 = u_M - u'_M, v3 = u_M + u'_M.
 */
inline EvenLattice lambda_tilde()
{
    IntMatrix g = direct_sum({hyperbolic_plane(), hyperbolic_plane(), hyperbolic_plane(), e8_negative(), e8_negative(),
                              IntMatrix{{-2}}});
    std::size_t n = 23;
    using detail::unit_vec;
    return EvenLattice(g, {{"uJ", unit_vec(n, {{0, 1}})},
                           {"uJ'", unit_vec(n, {{1, 1}})},
                           {"uM", unit_vec(n, {{2, 1}})},
                           {"uM'", unit_vec(n, {{3, 1}})},
                           {"uN", unit_vec(n, {{4, 1}})},
                           {"uN'", unit_vec(n, {{5, 1}})},
                           {"v1", unit_vec(n, {{0, 1}, {1, 1}})},
                           {"e1", unit_vec(n, {{0, 1}, {1, -1}})},
                           {"e2", unit_vec(n, {{22, 1}})},
                           {"e3", unit_vec(n, {{2, 1}, {3, -1}})},
                           {"v3", unit_vec(n, {{2, 1}, {3, 1}})}});
}

/**
 * v1^perp in the lattice above, with basis e1 | M | N | E8(-1)^2 | e2 (rank 22).
 * Named vectors are in these coordinates.
 */
inline EmbeddedLattice lambda()
{
    EvenLattice lt = lambda_tilde();
    RatMatrix b(0, 23);
    b.append_row(to_rational(lt.vec("e1")));
    for (std::size_t i = 2; i < 22; ++i) {
        RatVector e(23);
        e[i] = 1;
        b.append_row(e);
    }
    b.append_row(to_rational(lt.vec("e2")));
    std::size_t n = 22;
    using detail::unit_vec;
    return embed(b, lt,
                 {{"e1", unit_vec(n, {{0, 1}})},
                  {"e2", unit_vec(n, {{21, 1}})},
                  {"e3", unit_vec(n, {{1, 1}, {2, -1}})},
                  {"v3", unit_vec(n, {{1, 1}, {2, 1}})},
                  {"uM", unit_vec(n, {{1, 1}})},
                  {"uM'", unit_vec(n, {{2, 1}})},
                  {"uN", unit_vec(n, {{3, 1}})},
                  {"uN'", unit_vec(n, {{4, 1}})}});
}

/** e3^perp in the rank-23 lattice. */
inline EmbeddedLattice gamma_tilde()
{
    EvenLattice lt = lambda_tilde();
    return orth_complement(lt.vec("e3"), lt);
}

/** e3^perp inside v1^perp (basis in the coordinates of v1^perp). */
inline EmbeddedLattice gamma()
{
    EmbeddedLattice l = lambda();
    return orth_complement(l.lattice.vec("e3"), l.lattice);
}

/** J + <v3, (v3 + e2)/2> + N + E8(-1)^2, in coordinates of the rank-23 lattice. */
inline EmbeddedLattice phi_tilde()
{
    EvenLattice lt = lambda_tilde();
    RatMatrix b(0, 23);
    auto unit = [](std::size_t i) {
        RatVector e(23);
        e[i] = 1;
        return e;
    };
    b.append_row(unit(0));
    b.append_row(unit(1));
    RatVector v3 = to_rational(lt.vec("v3")), e2 = to_rational(lt.vec("e2"));
    b.append_row(v3);
    RatVector glue(23);
    for (std::size_t i = 0; i < 23; ++i)
        glue[i] = (v3[i] + e2[i]) / 2;
    b.append_row(glue);
    for (std::size_t i = 4; i < 22; ++i)
        b.append_row(unit(i));
    return embed(b, lt);
}

/** v1^perp inside the lattice above, in coordinates of the rank-23 lattice. */
inline EmbeddedLattice phi()
{
    EmbeddedLattice pt = phi_tilde();
    EvenLattice lt = lambda_tilde();
    RatMatrix b = pt.basis;
    // replace the J block by e1 = u_J - u'_J
    RatMatrix out(0, 23);
    out.append_row(to_rational(lt.vec("e1")));
    for (std::size_t i = 2; i < b.rows(); ++i)
        out.append_row(b.row(i));
    return embed(out, lt);
}

} // namespace epw

#pragma once

#include "epw/matrix.hpp"
#include "epw/poly_matrix.hpp"
#include "epw/random.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace epw {

/** Quadratic form on Q^d given by its symmetric Gram matrix. */
class QuadSpace {
public:
    QuadSpace() = default;
    explicit QuadSpace(RatMatrix gram) : gram_(std::move(gram))
    {
        if (!gram_.is_symmetric())
            throw std::invalid_argument("Gram matrix must be square and symmetric");
    }
    std::size_t dim() const { return gram_.rows(); }
    const RatMatrix& gram() const { return gram_; }
    Rational operator()(const RatVector& v) const { return bilinear(gram_, v, v); }

private:
    RatMatrix gram_;
};

/** Corank of q restricted to the span of the rows of s. */
inline std::size_t cork_restrict(const QuadSpace& q, const RatMatrix& s)
{
    if (s.cols() != q.dim())
        throw std::invalid_argument("subspace generators have the wrong length");
    RatMatrix b = row_basis(s);
    if (b.rows() == 0)
        return 0;
    return b.rows() - rank(restrict_form(q.gram(), b));
}

/** Ann(S) in dual coordinates: rows span the functionals vanishing on S. */
inline RatMatrix annihilator(const RatMatrix& s, std::size_t d)
{
    if (s.rows() == 0)
        return RatMatrix::identity(d);
    return nullspace(s);
}

/**
 * Dual form on Ann(ker q). `basis` spans Ann K in dual coordinates, `gram` is the form in that
 * basis, and `pairing` is a d x d matrix with phi^T pairing psi = q^dual(phi, psi) on Ann K.
 */
struct DualForm {
    RatMatrix kernel;
    RatMatrix basis;
    RatMatrix gram;
    RatMatrix pairing;
};

namespace detail {

/** Coordinate vectors completing the rows of k to a basis, in column order. */
inline RatMatrix complement_rows(const RatMatrix& k, std::size_t d)
{
    RatMatrix comp(0, d), span = k.rows() ? k : RatMatrix(0, d);
    for (std::size_t i = 0; i < d && span.rows() < d; ++i) {
        RatVector e(d);
        e[i] = 1;
        RatMatrix next = span;
        next.append_row(e);
        if (rank(next) > span.rows()) {
            span = next;
            comp.append_row(e);
        }
    }
    return comp;
}

} // namespace detail

inline DualForm dual_form(const QuadSpace& q)
{
    std::size_t d = q.dim();
    DualForm out;
    out.kernel = nullspace(q.gram());
    if (out.kernel.rows() == d) {
        out.kernel = RatMatrix::identity(d);
        out.basis = RatMatrix(0, d);
        out.gram = RatMatrix(0, 0);
        out.pairing = RatMatrix(d, d);
        return out;
    }
    RatMatrix comp = detail::complement_rows(out.kernel, d);
    RatMatrix n = restrict_form(q.gram(), comp);
    out.pairing = comp.transpose() * *inverse(n) * comp;
    out.basis = annihilator(out.kernel.rows() ? out.kernel : RatMatrix(0, d), d);
    out.gram = restrict_form(out.pairing, out.basis);
    return out;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline RatMatrix minor_matrix(const RatMatrix& m, const std::vector<std::size_t>& r, const std::vector<std::size_t>& c)
{
    RatMatrix s(r.size(), c.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j)
            s(i, j) = m(r[i], c[j]);
    return s;
}

} // namespace detail

/** The i-th compound of q, on the lex basis e_I of wedge^i. */
inline QuadSpace wedge_power_form(const QuadSpace& q, std::size_t i)
{
    if (i < 1 || i > q.dim())
        throw std::invalid_argument("wedge power index must lie in [1, dim]");
    auto idx = detail::subsets(q.dim(), i);
    RatMatrix c(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a; b < idx.size(); ++b)
            c(a, b) = c(b, a) = determinant(detail::minor_matrix(q.gram(), idx[a], idx[b]));
    return QuadSpace(c);
}

/** Plucker coordinates (lex i x i minors) of the span of the rows of v. */
inline RatVector decomposable_coords(const RatMatrix& v)
{
    auto idx = detail::subsets(v.cols(), v.rows());
    std::vector<std::size_t> all(v.rows());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    RatVector out;
    out.reserve(idx.size());
    for (const auto& cols : idx)
        out.push_back(determinant(detail::minor_matrix(v, all, cols)));
    return out;
}

/** q_* + sum_j t_j q_j with constant symmetric Gram matrices q_j. */
struct PencilFamily {
    RatMatrix q_star;
    std::vector<RatMatrix> forms;

    VarNames vars() const
    {
        std::vector<std::string> n;
        for (std::size_t j = 0; j < forms.size(); ++j)
            n.push_back("t" + std::to_string(j + 1));
        return make_vars(n);
    }
    void validate() const
    {
        if (!q_star.is_symmetric())
            throw std::invalid_argument("q_* must be symmetric");
        if (forms.size() > 5)
            throw std::invalid_argument("at most five parameters");
        if (q_star.rows() > 10)
            throw std::invalid_argument("families are limited to dimension 10");
        for (const auto& f : forms)
            if (f.rows() != q_star.rows() || !f.is_symmetric())
                throw std::invalid_argument("family members must be symmetric of the same size");
    }
    /** q(t) = sum_j t_j q_j as a polynomial matrix. */
    PolyMatrix variable_part() const
    {
        VarNames v = vars();
        PolyMatrix m(v, q_star.rows(), q_star.rows());
        for (std::size_t j = 0; j < forms.size(); ++j) {
            MultiPoly t = MultiPoly::variable(v, static_cast<unsigned>(j));
            for (std::size_t a = 0; a < q_star.rows(); ++a)
                for (std::size_t b = 0; b < q_star.rows(); ++b)
                    if (forms[j](a, b) != 0)
                        m(a, b) += forms[j](a, b) * t;
        }
        return m;
    }
};

/** Homogeneous parts Phi_0..Phi_d of det(q_* + q(t)). */
inline std::vector<MultiPoly> phi_expansion(const PencilFamily& fam)
{
    fam.validate();
    VarNames v = fam.vars();
    MultiPoly det = det_poly_matrix(PolyMatrix::constant(v, fam.q_star) + fam.variable_part());
    std::vector<MultiPoly> out;
    for (unsigned i = 0; i <= fam.q_star.rows(); ++i)
        out.push_back(det.homogeneous_part(i));
    return out;
}

/** The nonzero c with a == c * b, if one exists. */
inline std::optional<Rational> proportionality(const MultiPoly& a, const MultiPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return std::nullopt;
    Rational c = a.leading().coeff / b.leading().coeff;
    if (a != c * b)
        return std::nullopt;
    return c;
}

/** Symmetric coefficient matrix of a quadratic form in the variables of p (p homogeneous of degree 2 or 0). */
inline RatMatrix quadratic_coefficients(const MultiPoly& p)
{
    unsigned n = p.nvars();
    RatMatrix h(n, n);
    for (const auto& t : p.terms()) {
        std::vector<unsigned> e = mono::unpack(t.mono, n);
        std::vector<unsigned> at;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned r = 0; r < e[i]; ++r)
                at.push_back(i);
        if (at.size() != 2)
            throw std::invalid_argument("expected a quadratic form");
        if (at[0] == at[1])
            h(at[0], at[0]) += t.coeff;
        else {
            h(at[0], at[1]) += t.coeff / 2;
            h(at[1], at[0]) += t.coeff / 2;
        }
    }
    return h;
}

struct PhiCheck {
    std::size_t k = 0;
    bool vanish_below = false;
    std::optional<Rational> constant; // c with Phi_order = c * target, when proportional
    bool holds() const { return vanish_below && constant.has_value(); }
};

/** Phi_i = 0 for i < k and Phi_k proportional to det(q|_K), k = dim ker q_*. */
inline PhiCheck check_lowest_phi(const PencilFamily& fam)
{
    auto phi = phi_expansion(fam);
    RatMatrix ker = nullspace(fam.q_star);
    PhiCheck r;
    r.k = ker.rows();
    r.vanish_below = true;
    for (std::size_t i = 0; i < r.k; ++i)
        r.vanish_below = r.vanish_below && phi[i].is_zero();
    PolyMatrix qt = fam.variable_part();
    VarNames v = qt.vars();
    MultiPoly target = det_poly_matrix(PolyMatrix::constant(v, ker) * qt * PolyMatrix::constant(v, ker.transpose()));
    // in the basis B = (K, C) the lowest term is det(q(t)|K) det(q_*|C), and det(B)^2 rescales
    std::size_t d = fam.q_star.rows();
    RatMatrix comp = detail::complement_rows(ker, d);
    RatMatrix b = vstack(ker.rows() ? ker : RatMatrix(0, d), comp);
    Rational db = determinant(b);
    Rational c = (comp.rows() ? determinant(restrict_form(fam.q_star, comp)) : Rational(1)) / (db * db);
    if (phi[r.k] == c * target)
        r.constant = c;
    return r;
}

/**
 * For families vanishing on K = ker q_*: Phi_i = 0 for i < 2k and Phi_2k proportional to
 * det of q_*^dual on the span of q(t)(K).
 */
inline PhiCheck check_phi_on_vk(const PencilFamily& fam)
{
    RatMatrix ker = nullspace(fam.q_star);
    for (const auto& f : fam.forms)
        if (ker.rows() && !restrict_form(f, ker).is_zero())
            throw std::invalid_argument("family does not vanish on ker q_*");
    auto phi = phi_expansion(fam);
    PhiCheck r;
    r.k = ker.rows();
    r.vanish_below = true;
    for (std::size_t i = 0; i < std::min(2 * r.k, phi.size()); ++i)
        r.vanish_below = r.vanish_below && phi[i].is_zero();
    if (2 * r.k >= phi.size())
        return r;
    DualForm df = dual_form(QuadSpace(fam.q_star));
    PolyMatrix qt = fam.variable_part();
    VarNames v = qt.vars();
    PolyMatrix images = PolyMatrix::constant(v, ker) * qt; // rows q(t)(kappa_i) in U^dual
    MultiPoly target = det_poly_matrix(images * PolyMatrix::constant(v, df.pairing) * images.transpose());
    // block form [[0, A], [A^t, N]] in the basis B = (K, C): lowest term (-1)^k det N det(A N^-1 A^t)
    std::size_t d = fam.q_star.rows();
    RatMatrix comp = detail::complement_rows(ker, d);
    Rational db = determinant(vstack(ker.rows() ? ker : RatMatrix(0, d), comp));
    Rational c = determinant(restrict_form(fam.q_star, comp)) / (db * db);
    if (r.k % 2)
        c = -c;
    if (phi[2 * r.k] == c * target)
        r.constant = c;
    return r;
}

struct Phi2Rank {
    std::size_t lhs = 0; // rank of Phi_2 on L
    std::size_t codim_t = 0;
    std::size_t cork_bar = 0;
    std::size_t rhs() const { return codim_t - cork_bar; }
    bool holds() const { return lhs == rhs(); }
};

/** Both sides of rk(Phi_2|_L) = cod(T, U) - cork(qbar_*|_{T/<e>}), computed independently. */
inline Phi2Rank phi2_rank(const PencilFamily& fam)
{
    fam.validate();
    std::size_t d = fam.q_star.rows();
    RatMatrix ker = nullspace(fam.q_star);
    if (ker.rows() != 1)
        throw std::invalid_argument("q_* must have corank exactly 1");
    RatVector e = ker.row(0);
    for (const auto& f : fam.forms)
        if (bilinear(f, e, e) != 0)
            throw std::invalid_argument("every form in L must vanish at e");
    Phi2Rank r;
    if (!fam.forms.empty()) {
        auto phi = phi_expansion(fam);
        r.lhs = rank(quadratic_coefficients(phi.at(2)));
    }
    RatMatrix images(0, d);
    for (const auto& f : fam.forms)
        images.append_row(f.apply(e));
    r.codim_t = images.rows() ? rank(images) : 0;
    RatMatrix t = annihilator(row_basis(images.rows() ? images : RatMatrix(0, d)), d);
    // e spans the radical of q_* on T, so the quotient form loses exactly that line
    r.cork_bar = cork_restrict(QuadSpace(fam.q_star), t) - 1;
    return r;
}

/** Random symmetric form with the rows of k spanning its kernel. */
inline RatMatrix random_form_with_kernel(Rng& rng, const RatMatrix& k, std::size_t d)
{
    for (;;) {
        RatMatrix basis = k.rows() ? row_basis(k) : RatMatrix(0, d);
        while (basis.rows() < d)
            basis.append_row(rng.vector(d));
        auto inv = inverse(basis);
        if (!inv)
            continue;
        std::size_t kk = k.rows() ? rank(k) : 0;
        RatMatrix m(d, d);
        RatMatrix s = rng.symmetric(d - kk);
        if (rank(s) != d - kk)
            continue;
        for (std::size_t i = 0; i < d - kk; ++i)
            for (std::size_t j = 0; j < d - kk; ++j)
                m(kk + i, kk + j) = s(i, j);
        return *inv * m * inv->transpose();
    }
}

/** Random symmetric form whose restriction to the row span of k vanishes. */
inline RatMatrix random_form_vanishing_on(Rng& rng, const RatMatrix& k, std::size_t d)
{
    for (;;) {
        RatMatrix basis = k.rows() ? row_basis(k) : RatMatrix(0, d);
        std::size_t kk = basis.rows();
        while (basis.rows() < d)
            basis.append_row(rng.vector(d));
        auto inv = inverse(basis);
        if (!inv)
            continue;
        RatMatrix m = rng.symmetric(d);
        for (std::size_t i = 0; i < kk; ++i)
            for (std::size_t j = 0; j < kk; ++j)
                m(i, j) = 0;
        return *inv * m * inv->transpose();
    }
}

struct SuiteResult {
    std::string name;
    std::size_t passed = 0;
    std::size_t total = 0;
    bool ok() const { return passed == total; }
};

/** Randomized checks of the variable-form statements; deterministic in the seed. */
inline std::vector<SuiteResult> run_varquad_suites(std::uint64_t seed, std::size_t cases)
{
    Rng rng(seed);
    std::vector<SuiteResult> out;

    SuiteResult dual{"corank-duality", 0, 0};
    for (std::size_t c = 0; c < cases; ++c) {
        std::size_t d = 2 + rng.next() % 7;
        // hyperbolic summands make isotropic subspaces common
        RatMatrix g = rng.next() % 2 ? random_form_with_kernel(rng, RatMatrix(0, d), d) : [&] {
            RatMatrix h(d, d);
            for (std::size_t i = 0; i + 1 < d; i += 2)
                h(i, i + 1) = h(i + 1, i) = 1;
            if (d % 2)
                h(d - 1, d - 1) = 1;
            return h;
        }();
        QuadSpace q(g);
        std::size_t m = rng.next() % (d + 1);
        RatMatrix s(0, d);
        for (std::size_t i = 0; i < m; ++i) {
            if (rng.next() % 2) {
                RatVector e(d);
                e[rng.next() % d] = 1;
                s.append_row(e);
            } else
                s.append_row(rng.vector(d, -2, 2));
        }
        QuadSpace qd(*inverse(g));
        std::size_t lhs = cork_restrict(q, s);
        std::size_t rhs = cork_restrict(qd, annihilator(s.rows() ? row_basis(s) : s, d));
        ++dual.total;
        dual.passed += lhs == rhs;
    }
    out.push_back(dual);

    SuiteResult low{"lowest-phi", 0, 0}, vk{"phi-on-vk", 0, 0};
    for (std::size_t c = 0; c < cases; ++c) {
        std::size_t d = 3 + rng.next() % 3;
        std::size_t k = rng.next() % 4;
        if (k > d)
            k = d;
        RatMatrix ker = rng.matrix(k, d);
        PencilFamily fam{random_form_with_kernel(rng, ker, d), {}};
        std::size_t m = 1 + rng.next() % 3;
        for (std::size_t j = 0; j < m; ++j)
            fam.forms.push_back(rng.symmetric(d, -3, 3));
        ++low.total;
        low.passed += check_lowest_phi(fam).holds();

        PencilFamily fv{fam.q_star, {}};
        RatMatrix kk = nullspace(fam.q_star);
        for (std::size_t j = 0; j < m; ++j)
            fv.forms.push_back(random_form_vanishing_on(rng, kk, d));
        PhiCheck r = check_phi_on_vk(fv);
        ++vk.total;
        // when 2k > d only the vanishing statement has content
        vk.passed += 2 * r.k > d ? r.vanish_below : r.holds();
    }
    out.push_back(low);
    out.push_back(vk);

    SuiteResult grill{"phi2-rank", 0, 0};
    for (std::size_t c = 0; c < cases; ++c) {
        std::size_t d = 2 + rng.next() % 5;
        RatMatrix e = rng.matrix(1, d);
        while (e.is_zero())
            e = rng.matrix(1, d);
        PencilFamily fam{random_form_with_kernel(rng, e, d), {}};
        std::size_t m = rng.next() % 4;
        RatVector ev = e.row(0);
        for (std::size_t j = 0; j < m; ++j) {
            RatMatrix f = rng.symmetric(d, -3, 3);
            if (rng.next() % 3 == 0) {
                // low-rank members make T larger
                RatVector a = rng.vector(d), b = rng.vector(d);
                for (std::size_t x = 0; x < d; ++x)
                    for (std::size_t y = 0; y < d; ++y)
                        f(x, y) = a[x] * b[y] + a[y] * b[x];
            }
            Rational fe = bilinear(f, ev, ev);
            if (fe != 0) {
                // subtract a multiple of a form that is nonzero at e
                std::size_t p = 0;
                while (ev[p] == 0)
                    ++p;
                f(p, p) -= fe / (ev[p] * ev[p]);
            }
            fam.forms.push_back(f);
        }
        ++grill.total;
        grill.passed += phi2_rank(fam).holds();
    }
    out.push_back(grill);
    return out;
}

} // namespace epw

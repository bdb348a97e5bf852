#pragma once

#include "epw/poly.hpp"

#include <stdexcept>
#include <vector>

namespace epw {

struct SingularityReport {
    unsigned multiplicity = 0;
    bool reduced = false;            // no multiple component passes through p
    bool reduced_globally = false;   // the whole sextic is squarefree
    bool consecutive_triple = false; // a triple point of the strict transform lies over p
    bool simple = false;
};

namespace detail {

inline VarNames local_plane_vars()
{
    static const VarNames v = make_vars({"u", "w"});
    return v;
}

/** g(u, u*t)/u^m written in variables (u, t), for g with lowest degree m. */
inline MultiPoly strict_transform(const MultiPoly& g, unsigned m, bool second_chart)
{
    std::vector<Term> terms;
    for (const auto& t : g.terms()) {
        unsigned eu = mono::exponent(t.mono, 0), ew = mono::exponent(t.mono, 1);
        // chart 1: w = u t  -> u^{eu+ew} t^{ew};  chart 2: u = w s -> w^{eu+ew} s^{eu}
        unsigned base = eu + ew - m;
        unsigned other = second_chart ? eu : ew;
        terms.push_back({mono::pack({base, other}), t.coeff});
    }
    return MultiPoly::from_terms(g.vars(), std::move(terms));
}

inline unsigned multiplicity_at(const MultiPoly& g, const Rational& shift)
{
    const VarNames& v = g.vars();
    MultiPoly u = MultiPoly::variable(v, 0);
    MultiPoly w = MultiPoly::variable(v, 1) + MultiPoly::constant(v, shift);
    return static_cast<unsigned>(g.compose({u, w}).low_degree());
}

} // namespace detail

/** Local invariants of a plane sextic at a point on it. */
inline SingularityReport sextic_singularity(const MultiPoly& f, const std::vector<Rational>& p)
{
    if (f.nvars() != 3 || f.is_zero() || !f.is_homogeneous() || f.degree() != 6)
        throw std::invalid_argument("expected a nonzero homogeneous sextic in three variables");
    if (p.size() != 3 || (p[0] == 0 && p[1] == 0 && p[2] == 0))
        throw std::invalid_argument("point must be a nonzero vector of length 3");
    if (f.eval(p) != 0)
        throw std::invalid_argument("point does not lie on the curve");
    unsigned c = p[0] != 0 ? 0 : (p[1] != 0 ? 1 : 2);
    const VarNames& lv = detail::local_plane_vars();
    std::vector<MultiPoly> images(3);
    unsigned slot = 0;
    for (unsigned i = 0; i < 3; ++i) {
        if (i == c) {
            images[i] = MultiPoly::constant(lv, 1);
            continue;
        }
        images[i] = MultiPoly::variable(lv, slot++) + MultiPoly::constant(lv, p[i] / p[c]);
    }
    MultiPoly g = f.compose(images);
    SingularityReport r;
    r.multiplicity = static_cast<unsigned>(g.low_degree());

    MultiPoly sq = squarefree_part(f);
    r.reduced_globally = sq.degree() == f.degree();
    MultiPoly repeated = *divide_exact(f, sq);
    r.reduced = repeated.eval(p) != 0;

    if (r.multiplicity == 3) {
        MultiPoly cone = g.homogeneous_part(3);
        MultiPoly line = squarefree_part(cone);
        if (line.degree() == 1) {
            Rational a = line.coeff({1, 0}), b = line.coeff({0, 1});
            // tangent direction (u, w) = (-b, a)
            std::vector<unsigned> found;
            if (b != 0)
                found.push_back(detail::multiplicity_at(detail::strict_transform(g, 3, false), -a / b));
            if (a != 0)
                found.push_back(detail::multiplicity_at(detail::strict_transform(g, 3, true), -b / a));
            for (std::size_t i = 1; i < found.size(); ++i)
                if (found[i] != found[0])
                    throw std::logic_error("blow-up charts disagree on the strict transform");
            r.consecutive_triple = found.at(0) >= 3;
        }
    }
    r.simple = r.reduced && r.multiplicity <= 3 && !(r.multiplicity == 3 && r.consecutive_triple);
    return r;
}

} // namespace epw

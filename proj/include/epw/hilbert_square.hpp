#pragma once

#include "epw/check.hpp"
#include "epw/lattice.hpp"
#include "epw/quad_int.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace epw {

// ---------------------------------------------------------------------------
// Second cohomology of the Hilbert square of a K3 surface

/** mu(a) + m xi with a in the K3 lattice U^3 + E8(-1)^2 and xi the (-2) class. */
struct HilbClass {
    IntVector a = IntVector(22);
    Integer m = 0;

    friend bool operator==(const HilbClass& p, const HilbClass& q) { return p.a == q.a && p.m == q.m; }
};

/** The full lattice, coordinates 0..21 the K3 part and 22 the xi coefficient. */
inline const EvenLattice& hilb_lattice()
{
    static const EvenLattice l = lambda_tilde();
    return l;
}

inline IntVector to_lattice(const HilbClass& c)
{
    if (c.a.size() != 22)
        throw std::invalid_argument("K3 part must have 22 coordinates");
    IntVector v = c.a;
    v.push_back(c.m);
    return v;
}

inline HilbClass from_lattice(const IntVector& v)
{
    if (v.size() != 23)
        throw std::invalid_argument("expected 23 coordinates");
    return {IntVector(v.begin(), v.begin() + 22), v[22]};
}

inline HilbClass xi_class() { return {IntVector(22), 1}; }

inline Integer bb_form(const HilbClass& p, const HilbClass& q)
{
    return hilb_lattice().pair(to_lattice(p), to_lattice(q));
}

inline Integer bb_square(const HilbClass& p) { return bb_form(p, p); }

/** Polarized top intersection: the symmetrization of q(a,a)^2 scaled so that the diagonal is 3 q(a)^2. */
inline Integer fujiki_quartic(const HilbClass& a, const HilbClass& b, const HilbClass& c, const HilbClass& d)
{
    return bb_form(a, b) * bb_form(c, d) + bb_form(a, c) * bb_form(b, d) + bb_form(a, d) * bb_form(b, c);
}

// ---------------------------------------------------------------------------
// Rank-2 Neron-Severi lattices spanned by mu(d) and xi

/** A class x mu(d) + y xi. */
struct NSClass {
    Integer x = 0;
    Integer y = 0;

    friend bool operator==(const NSClass& p, const NSClass& q) { return p.x == q.x && p.y == q.y; }
    friend bool operator!=(const NSClass& p, const NSClass& q) { return !(p == q); }
    friend NSClass operator-(const NSClass& p) { return {-p.x, -p.y}; }
    friend NSClass operator*(const Integer& k, const NSClass& p) { return {k * p.x, k * p.y}; }
};

/** Lattice Z mu(d) + Z xi with Gram diag(d^2, -2); mu(d) is u_J + (d^2/2) u'_J in the K3 part. */
struct NSRank2 {
    long d2 = 4;

    explicit NSRank2(long square) : d2(square)
    {
        if (d2 != 2 && d2 != 4 && d2 != 10)
            throw std::invalid_argument("polarization square must be 2, 4 or 10");
    }

    Integer pair(const NSClass& p, const NSClass& q) const { return d2 * p.x * q.x - 2 * p.y * q.y; }
    Integer square(const NSClass& p) const { return pair(p, p); }

    HilbClass mu() const
    {
        HilbClass c;
        c.a[0] = 1;
        c.a[1] = d2 / 2;
        return c;
    }

    HilbClass lift(const NSClass& p) const
    {
        HilbClass c = mu();
        for (auto& e : c.a)
            e *= p.x;
        c.m = p.y;
        return c;
    }
};

// ---------------------------------------------------------------------------
// Conic classes

struct ConicArithmetic {
    Integer h2z2;   // top intersection h^2 zeta^2
    Rational q_zeta;
};

/**
 * For zeta orthogonal to h, h^2 zeta^2 = q(h) q(zeta); with h^2 zeta^2 equal to twice the
 * integral of zeta over a fiber this fixes q(zeta).
 */
inline ConicArithmetic conic_class_arithmetic(const HilbClass& h, const Integer& fiber_integral)
{
    Integer qh = bb_square(h);
    if (qh != 2)
        throw std::invalid_argument("conic arithmetic needs q(h) = 2, got " + qh.get_str());
    Integer h2z2 = 2 * fiber_integral;
    return {h2z2, Rational(h2z2) / Rational(qh)};
}

/** zeta = u_M - u'_M against h = u_J + u'_J, checked and classified inside h^perp. */
inline CaseReport conic_consistency_check()
{
    CaseReport r{"conic class", {}, {}};
    const EvenLattice& lt = hilb_lattice();
    HilbClass h = from_lattice(lt.vec("v1"));
    HilbClass zeta = from_lattice(lt.vec("e3"));
    r.check("q(h) = 2", bb_square(h) == 2);
    r.check("(zeta, h) = 0", bb_form(zeta, h) == 0);
    r.check("q(zeta) = -2", bb_square(zeta) == -2);
    r.check("h zeta^3 vanishes", fujiki_quartic(zeta, h, h, h) == 0);
    ConicArithmetic ca = conic_class_arithmetic(h, -2);
    r.check("h^2 zeta^2 = q(h) q(zeta)", fujiki_quartic(h, h, zeta, zeta) == ca.h2z2);
    r.check("q(zeta) from the fiber integral", ca.q_zeta == bb_square(zeta));

    EmbeddedLattice perp = lambda();
    auto c = coordinates_in(RatMatrix(1, 23, to_rational(to_lattice(zeta))), perp.basis);
    bool inside = c && is_integral(*c);
    r.check("zeta lies in h^perp", inside);
    if (inside) {
        IntVector v(perp.lattice.rank());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = (*c)(0, i).get_num();
        Divisibility dv = divisibility_and_star(v, perp.lattice);
        RootTag tag = classify_negative_root(v, perp.lattice);
        r.check("divisibility 1 in h^perp", dv.div == 1);
        r.check("tag S2*", tag == RootTag::S2_STAR);
        r.value("tag", to_string(tag));
    }
    r.value("q(zeta)", ca.q_zeta.get_str());
    return r;
}

// ---------------------------------------------------------------------------
// Case analysis

/** Degree 10: the orthogonal of h = mu - 2 xi in the Neron-Severi lattice is Z(2 mu - 5 xi). */
inline CaseReport delta_case_check()
{
    CaseReport r{"delta case", {}, {}};
    NSRank2 ns(10);
    NSClass h{1, -2}, g{2, -5};
    Integer qg = ns.square(g);
    r.check("q(mu - 2xi) = 2", ns.square(h) == 2);
    r.check("q(2mu - 5xi) = -10", qg == -10);
    r.check("(2mu - 5xi, mu - 2xi) = 0", ns.pair(g, h) == 0);
    r.check("lifted pairings agree", bb_form(ns.lift(g), ns.lift(h)) == 0 && bb_square(ns.lift(g)) == qg);
    // every class orthogonal to h is a multiple of g; primitive solution of 10x - 4y = 0 is (2, 5)
    bool generates = true;
    for (long x = -20; x <= 20; ++x)
        for (long y = -50; y <= 50; ++y)
            if (ns.pair({x, y}, h) == 0 && (x * 5 != -y * 2 || x % 2 != 0))
                generates = false;
    r.check("h^perp in NS is generated by 2mu - 5xi", generates);
    bool no_small = true;
    for (long k = 1; k <= 100; ++k) {
        Integer s = ns.square(Integer(k) * g);
        if (s == -2 || s == -4 || s != -10 * k * k)
            no_small = false;
    }
    r.check("no class of square -2 or -4 in h^perp", no_small);
    r.value("q(2mu-5xi)", qg.get_str());
    return r;
}

/** Degree 2: h = mu(d) = u_J + u'_J and xi is the (-2) generator of h^perp. */
inline CaseReport degree2_case_check()
{
    CaseReport r{"degree 2 case", {}, {}};
    NSRank2 ns(2);
    const EvenLattice& lt = hilb_lattice();
    HilbClass h = ns.mu(), xi = xi_class();
    r.check("h is v1", to_lattice(h) == lt.vec("v1"));
    r.check("(xi, h) = 0", bb_form(xi, h) == 0);
    r.check("q(xi) = -2", bb_square(xi) == -2);
    Divisibility full = divisibility_and_star(to_lattice(xi), lt);
    r.check("div(xi) = 2 in the full lattice", full.div == 2);

    EmbeddedLattice perp = lambda();
    auto c = coordinates_in(RatMatrix(1, 23, to_rational(to_lattice(xi))), perp.basis);
    if (!c || !is_integral(*c)) {
        r.check("xi lies in h^perp", false);
        return r;
    }
    IntVector v(perp.lattice.rank());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = (*c)(0, i).get_num();
    RootTag tag = classify_negative_root(v, perp.lattice);
    r.check("tag is S2' or S2''", tag == RootTag::S2_PRIME || tag == RootTag::S2_DPRIME);
    r.check("tag S2''", tag == RootTag::S2_DPRIME);
    r.value("div(xi)", full.div.get_str());
    r.value("tag", to_string(tag));
    return r;
}

// ---------------------------------------------------------------------------
// Quartic case: Z[sqrt2] model of Z mu(d) + Z xi with d^2 = 4

/** x mu + y xi maps to y + x sqrt2. */
inline QuadInt psi(const NSClass& c) { return {c.y, c.x}; }
inline NSClass psi_inverse(const QuadInt& z) { return {z.x, z.y}; }

/** (a, b) = -Tr(psi(a) conj(psi(b))). */
inline Integer trace_pairing(const NSClass& a, const NSClass& b) { return -(psi(a) * psi(b).conj()).trace(); }

inline const QuadInt& unit_g()
{
    static const QuadInt g{3, -2};
    return g;
}

/** g^k acting by multiplication; norm 1, so it preserves the trace form. */
inline NSClass apply_g(const NSClass& c, long k) { return psi_inverse(psi(c) * unit_g().pow(k)); }

inline NSClass default_ample() { return {1, -1}; }

struct PellClass {
    long n = 0;
    NSClass c;
};

/**
 * Classes of square 2 with y + x sqrt2 = +-(-1 + sqrt2)(3 + 2sqrt2)^n, |n| <= bound,
 * the sign taken so that the pairing with the given ample class is positive.
 */
inline std::vector<PellClass> pell_square_two_classes(long bound, const NSClass& ample)
{
    if (bound < 0)
        throw std::invalid_argument("bound must be non-negative");
    NSRank2 ns(4);
    if (ns.square(ample) <= 0)
        throw std::invalid_argument("reference class must have positive square");
    const QuadInt base{-1, 1}, eps{3, 2};
    std::vector<PellClass> out;
    for (long n = -bound; n <= bound; ++n) {
        NSClass c = psi_inverse(base * eps.pow(n));
        Integer s = ns.pair(c, ample);
        if (s == 0)
            throw std::logic_error("square-2 class orthogonal to a positive class");
        if (s < 0)
            c = -c;
        out.push_back({n, c});
    }
    return out;
}

/** psi(alpha_n) = -(3 - 2sqrt2)^n; each alpha_n has square -2. */
inline NSClass alpha_class(long n) { return psi_inverse(-unit_g().pow(n)); }

/** Sign of (alpha_n, ample): +1 means 2 alpha_n is effective, -1 means -2 alpha_n is. */
inline int effectivity_sign(long n, const NSClass& ample)
{
    Integer s = NSRank2(4).pair(alpha_class(n), ample);
    return s > 0 ? 1 : (s < 0 ? -1 : 0);
}

struct Obstruction {
    NSClass h;       // g^{-n}(mu - xi)
    NSClass beta;    // effective class on which h is negative
    long alpha_index = 0;
    bool beta_effective = false;
    Integer pairing;
};

/** For n != 0 the class h_n fails to be ample: an effective beta = +-2 alpha_m has (h_n, beta) = -4. */
inline Obstruction obstruction_pairing(long n, const NSClass& ample)
{
    if (n == 0)
        throw std::invalid_argument("h_0 is the polarization; no obstruction");
    Obstruction o;
    o.h = apply_g(ample, -n);
    if (n > 0) {
        o.alpha_index = -n + 1;
        o.beta = Integer(-2) * alpha_class(o.alpha_index);
    } else {
        o.alpha_index = -n;
        o.beta = Integer(2) * alpha_class(o.alpha_index);
    }
    o.beta_effective = NSRank2(4).pair(o.beta, ample) > 0;
    o.pairing = trace_pairing(o.h, o.beta);
    return o;
}

/** Quartic case summary: h = mu - xi, its orthogonal mu - 2 xi as an S4 root, Pell sweep and obstructions. */
inline CaseReport quartic_case_check(long bound = 10)
{
    CaseReport r{"quartic case", {}, {}};
    NSRank2 ns(4);
    NSClass h = default_ample();
    r.check("q(mu - xi) = 2", ns.square(h) == 2);

    bool trace_ok = true;
    for (long x = -6; x <= 6; ++x)
        for (long y = -6; y <= 6; ++y)
            for (long x2 = -3; x2 <= 3; ++x2)
                for (long y2 = -3; y2 <= 3; ++y2)
                    trace_ok = trace_ok && trace_pairing({x, y}, {x2, y2}) == ns.pair({x, y}, {x2, y2});
    r.check("trace form equals the Gram form", trace_ok);

    auto pell = pell_square_two_classes(bound, h);
    bool pell_ok = true;
    for (const auto& p : pell)
        pell_ok = pell_ok && ns.square(p.c) == 2 && ns.pair(p.c, h) > 0;
    r.check("Pell classes have square 2 and are positive", pell_ok);
    r.check("n = 0 gives mu - xi", pell[bound].c == h);

    bool alpha_ok = true, sign_ok = true, obst_ok = true;
    for (long n = -bound; n <= bound; ++n) {
        alpha_ok = alpha_ok && ns.square(alpha_class(n)) == -2 && alpha_class(n) == apply_g(NSClass{0, -1}, n);
        sign_ok = sign_ok && effectivity_sign(n, h) == (n > 0 ? 1 : -1);
        if (n != 0) {
            Obstruction o = obstruction_pairing(n, h);
            obst_ok = obst_ok && o.beta_effective && o.pairing == -4 && ns.square(o.h) == 2 &&
                      o.h == pell[bound + n].c;
        }
    }
    r.check("alpha_n = g^n(-xi) with square -2", alpha_ok);
    r.check("effectivity sign flips at n = 0", sign_ok);
    r.check("h_n pairs to -4 with an effective class for n != 0", obst_ok);

    // h^perp in the full lattice, with e1 = u_J - xi and e2 = xi - 2u'_J generating the discriminant
    const EvenLattice& lt = hilb_lattice();
    IntVector hv = to_lattice(ns.lift(h));
    EmbeddedLattice perp = orth_complement(hv, lt);
    auto local = [&](const IntVector& amb) -> std::optional<IntVector> {
        auto c = coordinates_in(RatMatrix(1, 23, to_rational(amb)), perp.basis);
        if (!c || !is_integral(*c))
            return std::nullopt;
        IntVector v(perp.lattice.rank());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = (*c)(0, i).get_num();
        return v;
    };
    IntVector xi = to_lattice(xi_class());
    IntVector e1 = lt.vec("uJ"), e2 = xi;
    for (std::size_t i = 0; i < 23; ++i) {
        e1[i] -= xi[i];
        e2[i] -= 2 * lt.vec("uJ'")[i];
    }
    auto l1 = local(e1), l2 = local(e2), root = local(to_lattice(ns.lift({1, -2})));
    if (!l1 || !l2 || !root) {
        r.check("reference vectors lie in h^perp", false);
        return r;
    }
    EvenLattice named(perp.lattice.gram(), {{"e1", *l1}, {"e2", *l2}});
    DiscGroup d(named);
    r.check("|D(h^perp)| = 4", d.order() == 4);
    RootTag tag = classify_negative_root(*root, named, d);
    r.check("mu - 2xi is an S4 root of h^perp", tag == RootTag::S4);
    r.value("tag(mu-2xi)", to_string(tag));
    return r;
}

} // namespace epw

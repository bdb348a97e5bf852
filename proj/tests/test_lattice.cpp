#include "epw/lattice.hpp"
#include "epw/random.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace epw;

namespace {

IntVector add(IntVector a, const IntVector& b, long k = 1)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += k * b[i];
    return a;
}

IntVector scale(IntVector a, long k)
{
    for (auto& x : a)
        x *= k;
    return a;
}

IntMatrix random_int(Rng& rng, std::size_t r, std::size_t c, long lo, long hi)
{
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = rng.uniform(lo, hi);
    return m;
}

std::set<Rational> nonzero_q_values(const DiscGroup& d)
{
    std::set<Rational> out;
    for (const auto& e : d.elements())
        if (!DiscGroup::is_zero(e))
            out.insert(d.q(e));
    return out;
}

// coordinates of v1^perp: 0 e1 | 1,2 M | 3,4 N | 5..20 E8(-1)^2 | 21 e2
constexpr std::size_t kRank = 22;

IntVector random_in(Rng& rng, const std::vector<std::size_t>& slots, long lo, long hi)
{
    IntVector v(kRank);
    for (auto s : slots)
        v[s] = rng.uniform(lo, hi);
    return v;
}

std::vector<std::size_t> slots(std::initializer_list<std::pair<std::size_t, std::size_t>> ranges)
{
    std::vector<std::size_t> out;
    for (auto [a, b] : ranges)
        for (std::size_t i = a; i <= b; ++i)
            out.push_back(i);
    return out;
}

Integer exact_div(const Integer& a, long b)
{
    if (a % b != 0)
        throw std::logic_error("inexact");
    return a / b;
}

/** Divisibility 1 and the given square: w + u_M + y u'_M. */
IntVector sample_star(Rng& rng, const EvenLattice& l, long square = -2)
{
    IntVector w = random_in(rng, slots({{0, 0}, {3, 20}, {21, 21}}), -2, 2);
    w[1] = 1;
    Integer rest = l.square(w);
    w[2] = exact_div(square - rest, 2);
    return w;
}

/** 2 lambda + 2 u_N + 2y u'_N + a e1 + b e2 with the requested square. */
IntVector sample_glued(Rng& rng, const EvenLattice& l, long a, long b, long square)
{
    IntVector v = scale(random_in(rng, slots({{1, 2}, {5, 20}}), -2, 2), 2);
    v[0] = a;
    v[21] = b;
    v[3] = 2;
    Integer rest = l.square(v);
    // (2y u'_N, 2 u_N) contributes 8y to the square
    v[4] = 2 * exact_div(square - rest, 8);
    return v;
}

/** Product of reflections in square-(-2) divisibility-1 vectors and square-2 vectors. */
IntMatrix random_stable_isometry(Rng& rng, const EvenLattice& l)
{
    IntMatrix g = IntMatrix::identity(l.rank());
    for (int k = 0; k < 3; ++k) {
        IntVector r = sample_star(rng, l, k == 1 ? 2 : -2);
        RatMatrix m = reflection_matrix(r, l);
        IntMatrix mi(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                mi(i, j) = m(i, j).get_num();
        g = mi * g;
    }
    return g;
}

} // namespace

TEST(Smith, TransformsAndInvariantFactors)
{
    Rng rng(1);
    for (int t = 0; t < 40; ++t) {
        std::size_t r = 1 + t % 5, c = 1 + (t / 5) % 5;
        IntMatrix a = random_int(rng, r, c, -6, 6);
        SmithForm s = smith_normal_form(a);
        IntMatrix d = s.u * a * s.v;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                EXPECT_EQ(d(i, j), (i == j && i < s.rank()) ? s.diag[i] : Integer(0));
        EXPECT_EQ(s.v * s.v_inv, IntMatrix::identity(c));
        EXPECT_EQ(abs(determinant(to_rational(s.u))), 1);
        for (std::size_t i = 0; i + 1 < s.rank(); ++i)
            EXPECT_EQ(s.diag[i + 1] % s.diag[i], 0);
        // first invariant factor is the gcd of the entries
        if (s.rank() > 0) {
            EXPECT_EQ(s.diag[0], gcd_of(a.data()));
        }
        EXPECT_EQ(s.rank(), rank(to_rational(a)));
        if (r == c && s.rank() == r) {
            Integer prod = 1;
            for (const auto& x : s.diag)
                prod *= x;
            EXPECT_EQ(Rational(prod), abs(determinant(to_rational(a))));
        }
    }
}

TEST(Smith, IntegerKernel)
{
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        IntMatrix a = random_int(rng, 1 + t % 3, 5, -4, 4);
        IntMatrix k = integer_kernel(a);
        EXPECT_EQ(k.rows(), 5 - rank(to_rational(a)));
        EXPECT_TRUE((a * k.transpose()).is_zero());
        // saturated: the kernel basis extends to a basis, so its maximal minors have gcd 1
        if (k.rows() > 0) {
            SmithForm s = smith_normal_form(k);
            for (const auto& x : s.diag)
                EXPECT_EQ(x, 1);
        }
    }
}

TEST(Signature, NamedLattices)
{
    EXPECT_EQ(signature(to_rational(hyperbolic_plane())), std::make_pair(std::size_t(1), std::size_t(1)));
    EXPECT_EQ(signature(to_rational(e8_negative())), std::make_pair(std::size_t(0), std::size_t(8)));
    EXPECT_EQ(lambda_tilde().sig(), std::make_pair(std::size_t(3), std::size_t(20)));
    EXPECT_EQ(lambda().lattice.sig(), std::make_pair(std::size_t(2), std::size_t(20)));
    EXPECT_EQ(gamma_tilde().lattice.sig(), std::make_pair(std::size_t(3), std::size_t(19)));
    EXPECT_EQ(gamma().lattice.sig(), std::make_pair(std::size_t(2), std::size_t(19)));
    EXPECT_EQ(phi_tilde().lattice.sig(), std::make_pair(std::size_t(3), std::size_t(19)));
    EXPECT_EQ(phi().lattice.sig(), std::make_pair(std::size_t(2), std::size_t(19)));
    RatMatrix diag{{3, 0, 0}, {0, -1, 0}, {0, 0, 0}};
    EXPECT_EQ(signature(diag), std::make_pair(std::size_t(1), std::size_t(1)));
}

TEST(DiscGroup, Examples)
{
    EXPECT_EQ(e8_negative().rows(), 8u);
    EXPECT_EQ(determinant(to_rational(e8_negative())), 1);
    DiscGroup e8{EvenLattice(e8_negative())};
    EXPECT_EQ(e8.order(), 1);

    EvenLattice l = lambda().lattice;
    DiscGroup d(l);
    EXPECT_EQ(d.factors(), (std::vector<Integer>{2, 2}));
    auto half = [&](const IntVector& v) {
        RatVector r = to_rational(v);
        for (auto& x : r)
            x /= 2;
        return d.coords(r);
    };
    auto e1 = half(l.vec("e1")), e2 = half(l.vec("e2"));
    EXPECT_EQ(d.q(e1), Rational(3, 2));
    EXPECT_EQ(d.q(e2), Rational(3, 2));
    EXPECT_EQ(d.q(d.add(e1, e2)), 1);
    EXPECT_EQ(d.b(e1, e2), 0);
    EXPECT_EQ(d.b(e1, e1), Rational(1, 2));
    EXPECT_NE(e1, e2);

    DiscGroup gt(gamma_tilde().lattice);
    EXPECT_EQ(gt.order(), 4);
    EXPECT_EQ(nonzero_q_values(gt), (std::set<Rational>{Rational(1, 2), Rational(3, 2), Rational(0)}));
    EXPECT_EQ(gamma_tilde().lattice.det(), -4);
    EXPECT_EQ(DiscGroup(gamma().lattice).order(), 8);

    EXPECT_THROW(DiscGroup(EvenLattice(IntMatrix{{0, 0}, {0, 2}})), std::invalid_argument);
    EXPECT_THROW(d.coords(RatVector(22, Rational(1, 3))), std::invalid_argument);
}

TEST(DiscGroup, OrderMatchesDeterminantAndLiftsAreDual)
{
    std::vector<EvenLattice> ls = {lambda_tilde(), lambda().lattice, gamma_tilde().lattice, gamma().lattice,
                                   phi_tilde().lattice, phi().lattice, EvenLattice(IntMatrix{{-4, 1}, {1, 6}})};
    for (const auto& l : ls) {
        DiscGroup d(l);
        EXPECT_EQ(d.order(), abs(l.det()));
        for (const auto& g : d.generators()) {
            RatVector gg = l.gram_q().apply(g);
            for (const auto& x : gg)
                EXPECT_TRUE(is_integer(x));
        }
        // b is symmetric and q(x) = b(x,x) mod 1
        auto el = d.elements();
        for (const auto& x : el)
            for (const auto& y : el) {
                EXPECT_EQ(d.b(x, y), d.b(y, x));
                EXPECT_EQ(mod_rational(d.q(x), 1), d.b(x, x));
            }
    }
}

TEST(Divisibility, Examples)
{
    EvenLattice lt = lambda_tilde();
    EvenLattice l = lambda().lattice;
    EXPECT_EQ(divisibility_and_star(l.vec("e2"), l).div, 2);
    EXPECT_EQ(divisibility_and_star(l.vec("e1"), l).div, 2);
    EXPECT_EQ(divisibility_and_star(lt.vec("e1"), lt).div, 1);
    EXPECT_EQ(divisibility_and_star(lt.vec("e2"), lt).div, 2);
    Divisibility h = divisibility_and_star(lt.vec("v1"), lt);
    EXPECT_EQ(h.div, 1);
    EXPECT_TRUE(DiscGroup::is_zero(h.star));
    EXPECT_THROW(divisibility_and_star(scale(lt.vec("v1"), 2), lt), std::invalid_argument);
    EXPECT_THROW(divisibility_and_star(IntVector(23), lt), std::invalid_argument);
}

TEST(Roots, Examples)
{
    EvenLattice l = lambda().lattice;
    EXPECT_TRUE(is_root(l.vec("e1"), l));
    EXPECT_TRUE(is_root(l.vec("e3"), l));
    EXPECT_TRUE(is_root(l.vec("v3"), l));
    EXPECT_TRUE(is_root(add(l.vec("e1"), l.vec("e2")), l));
    EvenLattice u(hyperbolic_plane());
    EXPECT_FALSE(is_root(IntVector{1, -2}, u));
    EXPECT_THROW(is_root(IntVector{1, 0}, u), std::invalid_argument);
    EXPECT_THROW(is_root(IntVector{2, -4}, u), std::invalid_argument);
}

TEST(Roots, TwoImplementationsAgree)
{
    Rng rng(3);
    EvenLattice l = lambda().lattice;
    std::size_t roots = 0, nonroots = 0;
    for (int t = 0; t < 400; ++t) {
        IntVector v(kRank);
        for (int k = 0; k < 3; ++k)
            v[rng.uniform(0, kRank - 1)] += rng.uniform(-2, 2);
        if (!is_primitive(v) || l.square(v) == 0)
            continue;
        bool a = is_root(v, l), b = is_root_by_divisibility(v, l);
        EXPECT_EQ(a, b);
        (a ? roots : nonroots) += 1;
    }
    EXPECT_GT(roots, 10u);
    EXPECT_GT(nonroots, 10u);
}

TEST(Eichler, Examples)
{
    EvenLattice lt = lambda_tilde();
    EXPECT_TRUE(u2_certificate(lt).has_value());
    IntVector a = lt.vec("v1"), b = add(lt.vec("uM"), lt.vec("uM'"));
    EXPECT_TRUE(eichler_equivalent(a, b, lt));
    EvenLattice l = lambda().lattice;
    EXPECT_FALSE(eichler_equivalent(l.vec("e1"), l.vec("e2"), l));
    EXPECT_TRUE(eichler_equivalent(l.vec("e3"), l.vec("e3"), l));
    EXPECT_FALSE(eichler_equivalent(l.vec("e3"), l.vec("e1"), l));
    // a single hyperbolic plane is not enough
    EXPECT_FALSE(u2_certificate(EvenLattice(direct_sum({hyperbolic_plane(), e8_negative()}))).has_value());
    EXPECT_THROW(eichler_equivalent(IntVector{1, 1}, IntVector{1, 1}, EvenLattice(hyperbolic_plane())),
                 std::invalid_argument);
}

TEST(Eichler, EquivalenceRelationOnSample)
{
    Rng rng(4);
    EvenLattice l = lambda().lattice;
    std::vector<IntVector> sample = {l.vec("e1"), l.vec("e2"), l.vec("e3"), add(l.vec("e1"), l.vec("e2"))};
    for (int t = 0; t < 4; ++t) {
        sample.push_back(sample_star(rng, l));
        sample.push_back(sample_glued(rng, l, 1, 0, -2));
        sample.push_back(sample_glued(rng, l, 0, 1, -2));
        sample.push_back(sample_glued(rng, l, 1, 1, -4));
    }
    std::size_t n = sample.size();
    std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            eq[i][j] = eichler_equivalent(sample[i], sample[j], l);
    for (std::size_t i = 0; i < n; ++i) {
        EXPECT_TRUE(eq[i][i]);
        for (std::size_t j = 0; j < n; ++j) {
            EXPECT_EQ(eq[i][j], eq[j][i]);
            for (std::size_t k = 0; k < n; ++k)
                if (eq[i][j] && eq[j][k]) {
                    EXPECT_TRUE(eq[i][k]);
                }
        }
    }
}

TEST(Classify, NamedRoots)
{
    EvenLattice l = lambda().lattice;
    EXPECT_EQ(classify_negative_root(l.vec("e3"), l), RootTag::S2_STAR);
    EXPECT_EQ(classify_negative_root(l.vec("e1"), l), RootTag::S2_PRIME);
    EXPECT_EQ(classify_negative_root(l.vec("e2"), l), RootTag::S2_DPRIME);
    EXPECT_EQ(classify_negative_root(add(l.vec("e1"), l.vec("e2")), l), RootTag::S4);
    EXPECT_THROW(classify_negative_root(l.vec("v3"), l), std::invalid_argument);
    IntVector not_root = add(l.vec("uN"), l.vec("uN'"), -2); // square -4, divisibility 1
    EXPECT_FALSE(is_root(not_root, l));
    EXPECT_THROW(classify_negative_root(not_root, l), std::invalid_argument);
    EXPECT_EQ(to_string(RootTag::S2_DPRIME), "S2_DPRIME");
}

TEST(Classify, SampledRootsGetTheirConstructedTag)
{
    Rng rng(5);
    EvenLattice l = lambda().lattice;
    DiscGroup d(l);
    std::map<RootTag, std::size_t> count;
    for (int t = 0; t < 30; ++t) {
        IntMatrix g = random_stable_isometry(rng, l);
        ASSERT_TRUE(is_isometry(g, l));
        ASSERT_TRUE(d.acts_trivially(g));
        std::vector<std::pair<IntVector, RootTag>> cases = {
            {sample_star(rng, l), RootTag::S2_STAR},
            {sample_glued(rng, l, 1, 0, -2), RootTag::S2_PRIME},
            {sample_glued(rng, l, 3, 2, -2), RootTag::S2_PRIME},
            {sample_glued(rng, l, 0, 1, -2), RootTag::S2_DPRIME},
            {sample_glued(rng, l, 2, -1, -2), RootTag::S2_DPRIME},
            {sample_glued(rng, l, 1, 1, -4), RootTag::S4},
            {sample_glued(rng, l, -1, 3, -4), RootTag::S4},
        };
        for (const auto& [v, tag] : cases) {
            for (const IntVector& w : {v, g.apply(v)}) {
                ASSERT_TRUE(is_root(w, l));
                EXPECT_EQ(classify_negative_root(w, l, d), tag);
                ++count[tag];
            }
        }
    }
    EXPECT_EQ(count.size(), 4u);
}

TEST(Classify, RandomSmallRootsLandInExactlyOneOrbit)
{
    Rng rng(6);
    EvenLattice l = lambda().lattice;
    DiscGroup d(l);
    std::size_t seen = 0;
    for (int t = 0; t < 3000 && seen < 200; ++t) {
        IntVector v(kRank);
        for (int k = 0; k < 4; ++k)
            v[rng.uniform(0, kRank - 1)] += rng.uniform(-1, 1);
        Integer vv = l.square(v);
        if ((vv != -2 && vv != -4) || !is_primitive(v) || !is_root(v, l))
            continue;
        EXPECT_NO_THROW(classify_negative_root(v, l, d));
        ++seen;
    }
    EXPECT_GE(seen, 100u);
}

TEST(Reflection, SquareTwoIsStableInvolution)
{
    EvenLattice l = lambda().lattice;
    IntVector v0 = add(l.vec("uN"), l.vec("uN'"));
    Reflection r = reflection(v0, l);
    EXPECT_TRUE(r.stable);
    EXPECT_TRUE(is_isometry(r.matrix, l));
    EXPECT_EQ(r.matrix * r.matrix, IntMatrix::identity(l.rank()));
    EXPECT_EQ(r.matrix.apply(v0), scale(v0, -1));
    EXPECT_THROW(reflection(l.vec("e1"), l), std::invalid_argument);
}

TEST(Iota, SwapIsNotStableAndRealisesIndexTwo)
{
    EvenLattice l = lambda().lattice;
    IotaSwap s = iota_swap(l);
    EXPECT_TRUE(s.isometry);
    EXPECT_EQ(s.matrix.apply(l.vec("e1")), l.vec("e2"));
    EXPECT_EQ(s.matrix.apply(l.vec("e2")), l.vec("e1"));
    EXPECT_EQ(s.matrix.apply(l.vec("e3")), l.vec("e3"));
    EXPECT_EQ(s.matrix * s.matrix, IntMatrix::identity(l.rank()));
    EXPECT_FALSE(s.stable);

    DiscGroup d(l);
    auto auts = disc_form_automorphisms(d);
    EXPECT_EQ(auts.size(), 2u);
    // the image of O(L) contains the identity and the action of the swap: all of Aut(D, q)
    bool found = false;
    for (const auto& a : auts)
        found = found || a == s.on_disc;
    EXPECT_TRUE(found);
}

TEST(Overlattice, UniqueGlueForGammaTilde)
{
    EmbeddedLattice gt = gamma_tilde();
    auto over = overlattices(gt.lattice);
    ASSERT_EQ(over.size(), 1u);
    const Overlattice& o = over[0];
    EXPECT_EQ(o.index, 2);
    EXPECT_EQ(o.lattice.lattice.rank(), 22u);
    EXPECT_EQ(abs(o.lattice.lattice.det()), 1);
    EXPECT_EQ(o.lattice.lattice.sig(), std::make_pair(std::size_t(3), std::size_t(19)));
    // contains the original with index 2
    auto coords = coordinates_in(RatMatrix::identity(22), o.lattice.basis);
    ASSERT_TRUE(coords.has_value());
    IndexCheck ic = sublattice_index_and_discr(*coords, o.lattice.lattice);
    EXPECT_EQ(ic.index, 2);
    EXPECT_TRUE(ic.holds);
    // the glued lattice inside the rank-23 space is the one built from (v3 + e2)/2
    RatMatrix ambient = o.lattice.basis * gt.basis;
    EXPECT_TRUE(same_span(ambient, phi_tilde().basis));
}

TEST(Overlattice, NoGlueCases)
{
    EXPECT_TRUE(overlattices(EvenLattice(e8_negative())).empty());
    EXPECT_TRUE(overlattices(EvenLattice(IntMatrix{{-2, 0}, {0, -2}})).empty());
    EXPECT_TRUE(overlattices(lambda().lattice).empty());
}

TEST(Overlattice, QuotientDiscriminant)
{
    // U(2) + (-4) has isotropic order-2 classes; each overlattice divides |D| by 4
    EvenLattice l(IntMatrix{{0, 2, 0}, {2, 0, 0}, {0, 0, -4}});
    auto over = overlattices(l);
    EXPECT_FALSE(over.empty());
    for (const auto& o : over) {
        EXPECT_EQ(DiscGroup(o.lattice.lattice).order() * 4, DiscGroup(l).order());
        auto c = coordinates_in(RatMatrix::identity(3), o.lattice.basis);
        ASSERT_TRUE(c && is_integral(*c));
        EXPECT_EQ(sublattice_index_and_discr(*c, o.lattice.lattice).index, 2);
    }
}

TEST(SublatticeIndex, Examples)
{
    EmbeddedLattice gt = gamma_tilde(), pt = phi_tilde();
    auto c = coordinates_in(gt.basis, pt.basis);
    ASSERT_TRUE(c.has_value());
    IndexCheck ic = sublattice_index_and_discr(*c, pt.lattice);
    EXPECT_EQ(ic.index, 2);
    EXPECT_EQ(ic.disc_sub, -4);
    EXPECT_EQ(ic.disc_super, -1);
    EXPECT_TRUE(ic.holds);

    EvenLattice e8(e8_negative());
    EXPECT_EQ(sublattice_index_and_discr(RatMatrix::identity(8), e8).index, 1);
    EXPECT_EQ(sublattice_index_and_discr(Rational(2) * RatMatrix::identity(8), e8).index, 256);
    EXPECT_THROW(sublattice_index_and_discr(RatMatrix::identity(7), e8), std::invalid_argument);
}

TEST(OrthComplement, Examples)
{
    EvenLattice lt = lambda_tilde();
    EmbeddedLattice l = orth_complement(lt.vec("v1"), lt);
    EXPECT_EQ(l.lattice.rank(), 22u);
    DiscGroup d(l.lattice);
    EXPECT_EQ(d.order(), 4);
    EXPECT_EQ(d.factors(), (std::vector<Integer>{2, 2}));
    EXPECT_EQ(nonzero_q_values(d), (std::set<Rational>{Rational(3, 2), Rational(1)}));
    EXPECT_EQ(l.lattice.sig(), lambda().lattice.sig());
    EXPECT_TRUE(same_span(l.basis, lambda().basis));

    EvenLattice lam = lambda().lattice;
    EmbeddedLattice g = orth_complement(lam.vec("e3"), lam);
    EXPECT_EQ(g.lattice.rank(), 21u);
    EXPECT_EQ(DiscGroup(g.lattice).order(), 8);

    EvenLattice small(direct_sum({IntMatrix{{-2}}, hyperbolic_plane()}));
    EmbeddedLattice rest = orth_complement(IntVector{1, 0, 0}, small);
    EXPECT_EQ(rest.lattice.det(), -1);
    EXPECT_TRUE(same_span(rest.basis, RatMatrix{{0, 1, 0}, {0, 0, 1}}));
    EXPECT_THROW(orth_complement(IntVector{2, 0, 0}, small), std::invalid_argument);
}

TEST(NamedLattices, Relations)
{
    EvenLattice lt = lambda_tilde();
    EXPECT_EQ(lt.rank(), 23u);
    EXPECT_EQ(lt.square(lt.vec("e1")), -2);
    EXPECT_EQ(lt.square(lt.vec("e2")), -2);
    EXPECT_EQ(lt.square(lt.vec("e3")), -2);
    EXPECT_EQ(lt.square(lt.vec("v1")), 2);
    EXPECT_EQ(lt.square(lt.vec("v3")), 2);
    EXPECT_EQ(lt.pair(lt.vec("e1"), lt.vec("v1")), 0);
    EXPECT_EQ(lt.det(), 2);
    EXPECT_EQ(phi_tilde().lattice.det(), -1);
    EXPECT_EQ(phi().lattice.det(), -2);
    EXPECT_THROW(EvenLattice(IntMatrix{{1}}), std::invalid_argument);
    EXPECT_THROW(EvenLattice(IntMatrix{{0, 1}, {2, 0}}), std::invalid_argument);
    EXPECT_THROW(lt.vec("missing"), std::out_of_range);
}

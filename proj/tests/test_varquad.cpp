#include "epw/varquad.hpp"

#include <gtest/gtest.h>

using namespace epw;

namespace {

RatMatrix diag(std::vector<Rational> d)
{
    RatMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

/** Phi_i(t0) from det(q_* + s q(t0)) sampled at s = 0..d and solved for its s-coefficients. */
std::vector<Rational> phi_by_scaling(const PencilFamily& fam, const std::vector<Rational>& t0)
{
    std::size_t d = fam.q_star.rows();
    RatMatrix qt(d, d);
    for (std::size_t j = 0; j < fam.forms.size(); ++j)
        qt = qt + t0[j] * fam.forms[j];
    RatMatrix vander(d + 1, d + 1);
    RatVector vals(d + 1);
    for (std::size_t s = 0; s <= d; ++s) {
        Rational p = 1;
        for (std::size_t i = 0; i <= d; ++i, p *= s)
            vander(s, i) = p;
        vals[s] = determinant(fam.q_star + Rational(s) * qt);
    }
    RatMatrix col(d + 1, 1, vals);
    return solve(vander, col)->transpose().row(0);
}

} // namespace

TEST(CorkRestrict, Examples)
{
    RatMatrix e1(1, 2, {Rational(1), Rational(0)});
    EXPECT_EQ(cork_restrict(QuadSpace(diag({1, 1})), e1), 0u);
    EXPECT_EQ(cork_restrict(QuadSpace(RatMatrix{{0, 1}, {1, 0}}), e1), 1u);
    EXPECT_EQ(cork_restrict(QuadSpace(diag({1, 1})), RatMatrix(0, 2)), 0u);

    Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        RatMatrix g = rng.symmetric(5, -2, 2);
        RatMatrix s = rng.matrix(1 + t % 4, 5, -2, 2);
        // oracle: dim S minus rank of the Gram matrix in a basis of S
        RatMatrix b = row_basis(s);
        RatMatrix gram = b * g * b.transpose();
        EXPECT_EQ(cork_restrict(QuadSpace(g), s), b.rows() - rank(gram));
    }
}

TEST(CorkRestrict, RejectsWrongShape)
{
    EXPECT_THROW(cork_restrict(QuadSpace(diag({1, 1})), RatMatrix(1, 3)), std::invalid_argument);
    EXPECT_THROW(QuadSpace(RatMatrix{{0, 1}, {2, 0}}), std::invalid_argument);
}

TEST(DualForm, Examples)
{
    DualForm d = dual_form(QuadSpace(diag({2, 3})));
    EXPECT_EQ(d.gram, diag({Rational(1, 2), Rational(1, 3)}));
    EXPECT_EQ(d.kernel.rows(), 0u);

    DualForm k = dual_form(QuadSpace(diag({0, 1})));
    ASSERT_EQ(k.gram.rows(), 1u);
    EXPECT_EQ(k.gram(0, 0), 1);
    EXPECT_EQ(k.basis, RatMatrix(1, 2, {Rational(0), Rational(1)}));
}

TEST(DualForm, PairingInvertsTheInducedMap)
{
    Rng rng(4);
    for (std::size_t k = 0; k <= 3; ++k) {
        RatMatrix ker = rng.matrix(k, 6);
        RatMatrix g = random_form_with_kernel(rng, ker, 6);
        DualForm d = dual_form(QuadSpace(g));
        EXPECT_EQ(d.kernel.rows(), k);
        // q^dual(q v, q w) = q(v, w)
        for (int t = 0; t < 5; ++t) {
            RatVector v = rng.vector(6), w = rng.vector(6);
            EXPECT_EQ(bilinear(d.pairing, g.apply(v), g.apply(w)), bilinear(g, v, w));
        }
    }
}

TEST(DualForm, CorankDualityRandom)
{
    Rng rng(5);
    std::size_t checked = 0;
    for (std::size_t d = 2; d <= 8; ++d) {
        RatMatrix g = random_form_with_kernel(rng, RatMatrix(0, d), d);
        DualForm df = dual_form(QuadSpace(g));
        for (int t = 0; t < 50; ++t) {
            RatMatrix s(0, d);
            std::size_t m = rng.next() % (d + 1);
            for (std::size_t i = 0; i < m; ++i)
                s.append_row(rng.vector(d, -1, 1));
            // force isotropic directions in half the cases
            if (t % 2 && m > 0) {
                RatVector v = s.row(0);
                Rational qv = bilinear(g, v, v);
                if (qv != 0 && m > 1) {
                    RatVector w = s.row(1);
                    RatVector gw = g.apply(w);
                    // replace w by w - (q(v,w)/q(v)) v so v, w are orthogonal, then shift v
                    Rational c = dot(v, gw) / qv;
                    for (std::size_t x = 0; x < d; ++x)
                        w[x] -= c * v[x];
                    s.set_row(1, w);
                }
            }
            RatMatrix ann = annihilator(s.rows() ? row_basis(s) : s, d);
            EXPECT_EQ(cork_restrict(QuadSpace(g), s), cork_restrict(QuadSpace(df.gram), ann));
            ++checked;
        }
    }
    EXPECT_GE(checked, 200u);
}

TEST(WedgePower, Examples)
{
    QuadSpace q(diag({2, 3, 5}));
    EXPECT_EQ(wedge_power_form(q, 2).gram(), diag({6, 10, 15}));
    EXPECT_EQ(wedge_power_form(q, 3).gram(), diag({30}));
    EXPECT_EQ(wedge_power_form(q, 1).gram(), q.gram());
    EXPECT_THROW(wedge_power_form(q, 0), std::invalid_argument);
    EXPECT_THROW(wedge_power_form(q, 4), std::invalid_argument);
}

TEST(WedgePower, DecomposablesGiveRestrictedGram)
{
    Rng rng(6);
    for (int t = 0; t < 40; ++t) {
        std::size_t d = 2 + t % 5, i = 1 + t % d;
        QuadSpace q(rng.symmetric(d));
        RatMatrix v = rng.matrix(i, d);
        RatVector alpha = decomposable_coords(v);
        EXPECT_EQ(wedge_power_form(q, i)(alpha), determinant(v * q.gram() * v.transpose()));
    }
}

TEST(Phi, ThreeDimensionalExample)
{
    RatMatrix xy(3, 3);
    xy(0, 1) = xy(1, 0) = Rational(1, 2);
    PencilFamily fam{diag({0, 1, 1}), {xy}};
    auto phi = phi_expansion(fam);
    ASSERT_EQ(phi.size(), 4u);
    EXPECT_EQ(to_text(phi[2]), "-1/4*t1^2");
    EXPECT_TRUE(phi[0].is_zero());
    EXPECT_TRUE(phi[1].is_zero());
    EXPECT_TRUE(phi[3].is_zero());
    EXPECT_EQ(rank(quadratic_coefficients(phi[2])), 1u);

    Phi2Rank r = phi2_rank(fam);
    EXPECT_EQ(r.lhs, 1u);
    EXPECT_EQ(r.codim_t, 1u);
    EXPECT_EQ(r.cork_bar, 0u);
    EXPECT_TRUE(r.holds());
}

TEST(Phi, MatchesScalingExpansion)
{
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        std::size_t d = 3 + t % 3;
        PencilFamily fam{random_form_with_kernel(rng, rng.matrix(t % 3, d), d), {rng.symmetric(d), rng.symmetric(d)}};
        auto phi = phi_expansion(fam);
        std::vector<Rational> t0 = {rng.coeff(), rng.coeff()};
        auto ref = phi_by_scaling(fam, t0);
        for (std::size_t i = 0; i <= d; ++i)
            EXPECT_EQ(phi[i].eval(t0), ref[i]);
    }
}

TEST(Phi, LowestTermIsKernelDeterminant)
{
    Rng rng(8);
    for (std::size_t k = 0; k <= 3; ++k)
        for (int t = 0; t < 5; ++t) {
            std::size_t d = 4 + t % 2;
            PencilFamily fam{random_form_with_kernel(rng, rng.matrix(k, d), d), {}};
            for (int j = 0; j < 3; ++j)
                fam.forms.push_back(rng.symmetric(d, -3, 3));
            PhiCheck r = check_lowest_phi(fam);
            EXPECT_EQ(r.k, k);
            EXPECT_TRUE(r.vanish_below);
            ASSERT_TRUE(r.constant.has_value());
            EXPECT_NE(*r.constant, 0);
        }
}

TEST(Phi, LowestTermWhenFormsAreSingularOnKernel)
{
    // q(t) restricted to K = <e0, e1> is singular for every t: both sides vanish, with the predicted constant
    RatMatrix qs = diag({0, 0, 2, 3});
    RatMatrix f(4, 4);
    f(0, 0) = 1;
    f(1, 2) = f(2, 1) = 1;
    f(3, 3) = -1;
    PhiCheck r = check_lowest_phi(PencilFamily{qs, {f}});
    EXPECT_EQ(r.k, 2u);
    EXPECT_TRUE(r.vanish_below);
    EXPECT_TRUE(phi_expansion(PencilFamily{qs, {f}})[2].is_zero());
    ASSERT_TRUE(r.constant.has_value());
    EXPECT_EQ(*r.constant, 6);
}

TEST(Phi, VanishingOnKernelDoublesTheOrder)
{
    Rng rng(9);
    for (std::size_t k = 0; k <= 3; ++k)
        for (int t = 0; t < 5; ++t) {
            std::size_t d = 6;
            RatMatrix qs = random_form_with_kernel(rng, rng.matrix(k, d), d);
            RatMatrix ker = nullspace(qs);
            PencilFamily fam{qs, {}};
            for (int j = 0; j < 3; ++j)
                fam.forms.push_back(random_form_vanishing_on(rng, ker, d));
            PhiCheck r = check_phi_on_vk(fam);
            EXPECT_TRUE(r.vanish_below);
            ASSERT_TRUE(r.constant.has_value()) << "k = " << k;
            EXPECT_NE(*r.constant, 0);
        }
}

TEST(Phi, NormalisedBasisSumOfSquaredMinors)
{
    // q_* = diag(0,0,1,1,1): Phi_4 = (-1)^2 * sum over column pairs of the squared 2x2 minors of rows 0,1
    Rng rng(10);
    RatMatrix qs = diag({0, 0, 1, 1, 1});
    PencilFamily fam{qs, {}};
    for (int j = 0; j < 3; ++j) {
        RatMatrix f = rng.symmetric(5, -3, 3);
        f(0, 0) = f(0, 1) = f(1, 0) = f(1, 1) = 0;
        fam.forms.push_back(f);
    }
    PolyMatrix m = fam.variable_part();
    MultiPoly sum(m.vars());
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = a + 1; b < 5; ++b) {
            MultiPoly minor = m(0, a) * m(1, b) - m(0, b) * m(1, a);
            sum += minor * minor;
        }
    auto phi = phi_expansion(fam);
    EXPECT_TRUE(phi[3].is_zero());
    EXPECT_EQ(phi[4], sum);
}

TEST(Phi2Rank, EmptyFamily)
{
    PencilFamily fam{diag({0, 1, 1}), {}};
    Phi2Rank r = phi2_rank(fam);
    EXPECT_EQ(r.lhs, 0u);
    EXPECT_EQ(r.rhs(), 0u);
    EXPECT_TRUE(r.holds());
}

TEST(Phi2Rank, Preconditions)
{
    EXPECT_THROW(phi2_rank(PencilFamily{diag({0, 0, 1}), {}}), std::invalid_argument);
    EXPECT_THROW(phi2_rank(PencilFamily{diag({0, 1, 1}), {diag({1, 0, 0})}}), std::invalid_argument);
}

TEST(Phi2Rank, RandomInstancesViaSuites)
{
    auto suites = run_varquad_suites(2024, 200);
    ASSERT_EQ(suites.size(), 4u);
    for (const auto& s : suites) {
        EXPECT_EQ(s.total, 200u) << s.name;
        EXPECT_TRUE(s.ok()) << s.name << ": " << s.passed << "/" << s.total;
    }
}

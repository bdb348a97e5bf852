#include "epw/instances.hpp"
#include "epw/wedge.hpp"

#include <gtest/gtest.h>

using namespace epw;

namespace {

Vec6 vec(std::initializer_list<int> xs)
{
    Vec6 v;
    for (int x : xs)
        v.push_back(Rational(x));
    return v;
}

RatMatrix span_rows(const std::vector<RatVector>& rows, std::size_t cols)
{
    return RatMatrix::from_rows(rows, cols);
}

// v ^ (second power of V) is the kernel of t -> v ^ t on trivectors.
std::size_t kernel_oracle(const RatMatrix& rows, const Vec6& v)
{
    RatMatrix img(0, 15);
    for (std::size_t r = 0; r < rows.rows(); ++r)
        img.append_row(ext::wedge(1, v, 3, rows.row(r)));
    return rows.rows() - rank(img);
}

// A = third power of span(e1..e5): all e_ijk with k <= 5 (1-based).
LagrangianFrame wedge3_first_five()
{
    RatMatrix m(0, 20);
    for (unsigned i = 0; i < 5; ++i)
        for (unsigned j = i + 1; j < 5; ++j)
            for (unsigned k = j + 1; k < 5; ++k)
                m.append_row(trivector_unit(i, j, k));
    return LagrangianFrame(m);
}

LagrangianFrame v_wedge_all(const Vec6& v)
{
    return LagrangianFrame(v_wedge_bivectors(v));
}

} // namespace

TEST(Wedge, PairingExamples)
{
    EXPECT_EQ(symplectic_pairing(trivector_unit(0, 1, 2), trivector_unit(3, 4, 5)), 1);
    EXPECT_EQ(symplectic_pairing(trivector_unit(3, 4, 5), trivector_unit(0, 1, 2)), -1);
    EXPECT_EQ(symplectic_pairing(trivector_unit(0, 1, 2), trivector_unit(0, 1, 3)), 0);
    // e135 ^ e246: the shuffle 1,3,5,2,4,6 has three inversions
    EXPECT_EQ(symplectic_pairing(trivector_unit(0, 2, 4), trivector_unit(1, 3, 5)), -1);
    Rng rng(1);
    for (int k = 0; k < 100; ++k) {
        Trivector a = rng.vector(20), b = rng.vector(20);
        EXPECT_EQ(symplectic_pairing(a, b), -symplectic_pairing(b, a));
        EXPECT_EQ(symplectic_pairing(a, b), bilinear(symplectic_gram(), a, b));
    }
}

TEST(Wedge, LagrangianExamples)
{
    RatMatrix e1_part(0, 20);
    for (unsigned i = 1; i < 6; ++i)
        for (unsigned j = i + 1; j < 6; ++j)
            e1_part.append_row(trivector_unit(0, i, j));
    EXPECT_TRUE(is_lagrangian(e1_part));
    EXPECT_TRUE(is_lagrangian(wedge3_first_five().rows()));
    RatMatrix bad(0, 20);
    bad.append_row(trivector_unit(0, 1, 2));
    bad.append_row(trivector_unit(3, 4, 5));
    for (unsigned t : {0u, 1u, 3u, 4u, 5u, 6u, 7u, 8u})
        bad.append_row(ext::basis_vector(3, ext::masks(3)[t + 1]));
    EXPECT_EQ(rank(bad), 10u);
    EXPECT_FALSE(is_lagrangian(bad));
    EXPECT_THROW(LagrangianFrame{bad}, std::invalid_argument);
}

TEST(Wedge, DegeneracyExamples)
{
    Vec6 e1 = ext::unit(0), e6 = ext::unit(5);
    EXPECT_EQ(degeneracy_dim(v_wedge_all(e1), e1), 10u);
    LagrangianFrame a = wedge3_first_five();
    EXPECT_EQ(degeneracy_dim(a, e1), 6u);
    EXPECT_EQ(degeneracy_dim(a, e6), 0u);
    EXPECT_THROW(degeneracy_dim(a, Vec6(6)), std::invalid_argument);
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
        GraphInstance g = generic_kernel_instance(static_cast<std::size_t>(t % 4), 100 + t);
        Vec6 v = rng.vector(6);
        if (is_zero_vector(v))
            continue;
        std::size_t d = degeneracy_dim(g.a, v);
        EXPECT_EQ(d, kernel_oracle(g.a.rows(), v));
        Vec6 w = v;
        for (auto& x : w)
            x *= Rational(-7, 3);
        EXPECT_EQ(degeneracy_dim(g.a, w), d);
    }
}

TEST(Wedge, DecomposeTrivector)
{
    auto w = decompose_trivector(trivector_unit(0, 1, 2));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(*w, Subspace3::span({ext::unit(0), ext::unit(1), ext::unit(2)}));
    Trivector t = trivector_unit(0, 1, 2);
    t[ext::index_of(0b111000)] = 1;
    EXPECT_FALSE(decompose_trivector(t).has_value());
    Trivector s = ext::wedge_vectors({vec({1, 0, 0, 1, 0, 0}), ext::unit(1), ext::unit(2)});
    auto ws = decompose_trivector(s);
    ASSERT_TRUE(ws.has_value());
    EXPECT_EQ(*ws, Subspace3::span({vec({1, 0, 0, 1, 0, 0}), ext::unit(1), ext::unit(2)}));
    EXPECT_THROW(decompose_trivector(Trivector(20)), std::invalid_argument);
    Rng rng(9);
    for (int k = 0; k < 40; ++k) {
        Trivector u = k % 2 ? rng.vector(20, -1, 1)
                            : ext::wedge_vectors({rng.vector(6), rng.vector(6), rng.vector(6)});
        if (is_zero_vector(u))
            continue;
        auto r = decompose_trivector(u);
        std::size_t kdim = nullspace(annihilator_map(u)).rows();
        if (r) {
            EXPECT_EQ(kdim, 3u);
            EXPECT_EQ(rank(span_rows({r->top(), u}, 20)), 1u);
        } else {
            EXPECT_NE(kdim, 3u);
        }
    }
}

TEST(Wedge, SigmaLevel)
{
    Subspace3 w = Subspace3::span({ext::unit(0), ext::unit(1), ext::unit(2)});
    SigmaLevel s = sigma_level(wedge3_first_five(), w);
    EXPECT_TRUE(s.theta);
    EXPECT_EQ(s.level, 7u);
    // A = e1 ^ (second power of V), W generic and missing e1
    Subspace3 g = Subspace3::span({vec({1, 2, 0, 1, 0, 3}), vec({0, 1, -1, 2, 1, 0}), vec({2, 0, 1, 0, -1, 1})});
    ASSERT_FALSE(g.contains(ext::unit(0)));
    SigmaLevel t = sigma_level(v_wedge_all(ext::unit(0)), g);
    EXPECT_FALSE(t.theta);
    EXPECT_EQ(t.level, kernel_oracle(w2_wedge_v(g), ext::unit(0)));
    EXPECT_EQ(t.level, 3u);
}

TEST(Wedge, GraphConstruction)
{
    ChartBasis chart = ChartBasis::standard();
    LagrangianFrame zero = lagrangian_from_graph(chart, RatMatrix(10, 10));
    EXPECT_EQ(zero, v_wedge_all(ext::unit(0)));
    LagrangianFrame id = lagrangian_from_graph(chart, RatMatrix::identity(10));
    EXPECT_TRUE(is_lagrangian(id.rows()));
    RatMatrix asym(10, 10);
    asym(0, 1) = 1;
    EXPECT_THROW(lagrangian_from_graph(chart, asym), std::invalid_argument);

    Rng rng(21);
    for (int t = 0; t < 10; ++t) {
        RatMatrix f = rng.matrix(5, 6);
        Vec6 v0 = rng.vector(6);
        RatMatrix all = f;
        all.append_row(v0);
        if (rank(all) != 6)
            continue;
        ChartBasis c(v0, f);
        RatMatrix k = rng.matrix(static_cast<std::size_t>(t % 4), 10);
        RatMatrix q = symmetric_with_kernel(rng, k);
        LagrangianFrame a = lagrangian_from_graph(c, q);
        EXPECT_TRUE(is_lagrangian(a.rows()));
        EXPECT_EQ(c.gram_of(a), q);
        EXPECT_EQ(degeneracy_dim(a, v0), 10 - rank(q));
    }
}

TEST(Wedge, LagrangianContaining)
{
    Subspace3 w = Subspace3::span({ext::unit(0), ext::unit(1), ext::unit(2)});
    for (std::size_t s : {1u, 2u, 3u}) {
        ContainingConstraints c;
        c.level = s;
        LagrangianFrame a = lagrangian_containing(w, c, 40 + s);
        SigmaLevel sl = sigma_level(a, w);
        EXPECT_TRUE(sl.theta);
        EXPECT_EQ(sl.level, s);
        EXPECT_EQ(lagrangian_containing(w, c, 40 + s), a);
    }
    Subspace3 w2 = Subspace3::span({ext::unit(0), ext::unit(3), ext::unit(4)});
    ContainingConstraints two;
    two.extra.push_back(w2.top());
    LagrangianFrame b = lagrangian_containing(w, two, 5);
    EXPECT_TRUE(sigma_level(b, w).theta);
    EXPECT_TRUE(sigma_level(b, w2).theta);
    ContainingConstraints bad;
    bad.extra.push_back(trivector_unit(3, 4, 5));
    EXPECT_THROW(lagrangian_containing(w, bad, 1), std::runtime_error);
}

TEST(Wedge, DualMembership)
{
    RatMatrix v0 = RatMatrix(0, 6);
    for (unsigned i = 0; i < 5; ++i)
        v0.append_row(ext::unit(i));
    LagrangianFrame a5 = wedge3_first_five();
    EXPECT_TRUE(dual_membership(a5, v0));
    EXPECT_TRUE(dual_membership_via_annihilator(a5, v0));
    RatMatrix v1(0, 6);
    for (unsigned i = 1; i < 6; ++i)
        v1.append_row(ext::unit(i));
    LagrangianFrame ae1 = v_wedge_all(ext::unit(0));
    EXPECT_FALSE(dual_membership(ae1, v1));
    EXPECT_FALSE(dual_membership_via_annihilator(ae1, v1));
    EXPECT_THROW(dual_membership(ae1, v1.block(0, 0, 4, 6)), std::invalid_argument);

    Rng rng(33);
    int hits = 0;
    for (int t = 0; t < 40; ++t) {
        LagrangianFrame a = t % 2 ? random_graph_instance(200 + t).a
                                  : lagrangian_containing(Subspace3::span({ext::unit(0), ext::unit(1), ext::unit(2)}),
                                                          ContainingConstraints{}, 300 + t);
        RatMatrix e = rng.matrix(5, 6);
        if (t % 4 == 0) { // force E to contain W
            for (unsigned i = 0; i < 3; ++i)
                e.set_row(i, ext::unit(i));
        }
        if (rank(e) != 5)
            continue;
        // oracle: stacked 20 x 20 rank on A and the third power of E
        RatMatrix stacked = vstack(a.rows(), third_power(e));
        bool oracle = rank(stacked) < 20;
        EXPECT_EQ(dual_membership(a, e), oracle);
        EXPECT_EQ(dual_membership_via_annihilator(a, e), oracle);
        hits += oracle;
    }
    EXPECT_GT(hits, 0);
}

TEST(Wedge, CurveAndBscript)
{
    Subspace3 w = Subspace3::span({ext::unit(0), ext::unit(1), ext::unit(2)});
    LagrangianFrame a5 = wedge3_first_five();
    EXPECT_TRUE(curve_membership(a5, w, ext::unit(0)));
    Vec6 scaled = ext::unit(0);
    scaled[0] = Rational(-5, 2);
    EXPECT_TRUE(curve_membership(a5, w, scaled));
    EXPECT_THROW(curve_membership(a5, w, ext::unit(4)), std::invalid_argument);

    LagrangianFrame a1 = lagrangian_containing(w, ContainingConstraints{}, 77);
    int on_curve = 0;
    for (int t = 0; t <= 12; ++t) {
        Vec6 p = vec({1, t, t * t - 3, 0, 0, 0});
        on_curve += curve_membership(a1, w, p);
        EXPECT_GE(degeneracy_dim(a1, p), 1u);
        EXPECT_FALSE(bscript_membership(a1, w, {w}, p).member);
    }
    EXPECT_LE(on_curve, 6);

    Subspace3 w2 = Subspace3::span({ext::unit(0), ext::unit(3), ext::unit(4)});
    ContainingConstraints two;
    two.extra.push_back(w2.top());
    LagrangianFrame b = lagrangian_containing(w, two, 5);
    BscriptResult r = bscript_membership(b, w, {w, w2}, ext::unit(0));
    EXPECT_TRUE(r.member);
    EXPECT_TRUE(r.via_theta_list);

    ContainingConstraints clause2;
    clause2.level = 2;
    clause2.extra.push_back(trivector_unit(0, 1, 3));
    LagrangianFrame c = lagrangian_containing(w, clause2, 8);
    BscriptResult r2 = bscript_membership(c, w, {w}, ext::unit(0));
    EXPECT_TRUE(r2.via_triple);
    EXPECT_GE(r2.triple_dim, 2u);
    EXPECT_FALSE(curve_smooth_at(c, w, {w}, ext::unit(0)));
}

TEST(Wedge, CurveSmoothAtNormalForm)
{
    GraphInstance g = normal_form_instance(3);
    const Subspace3& w = g.theta[0];
    EXPECT_EQ(degeneracy_dim(g.a, ext::unit(0)), 2u);
    EXPECT_EQ(sigma_level(g.a, w).level, 1u);
    EXPECT_TRUE(curve_smooth_at(g.a, w, g.theta, ext::unit(0)));

    ContainingConstraints c3;
    c3.level = 1;
    LagrangianFrame a = lagrangian_containing(w, c3, 12);
    // a point of P(W) with k = 3 is not a smooth point
    RatMatrix k3(0, 10);
    k3.append_row(RatVector{1, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    k3.append_row(RatVector{0, 1, 0, 0, 0, 0, 0, 0, 3, 0});
    k3.append_row(RatVector{0, 0, 1, 0, 0, 0, 2, 0, 0, 1});
    GraphInstance h = graph_with_kernel(ChartBasis::standard(), k3, 4);
    EXPECT_EQ(degeneracy_dim(h.a, ext::unit(0)), 3u);
    EXPECT_FALSE(curve_smooth_at(h.a, w, {w}, ext::unit(0)));
    (void)a;
}

TEST(Wedge, ThetaLinesLieInDegeneracyLocus)
{
    Subspace3 w = Subspace3::span({vec({1, 1, 0, 0, 2, 0}), vec({0, 1, 3, 0, 0, 1}), vec({0, 0, 1, 1, 0, -1})});
    LagrangianFrame a = lagrangian_containing(w, ContainingConstraints{}, 90);
    Rng rng(6);
    for (int t = 0; t < 15; ++t) {
        Vec6 p(6);
        for (unsigned i = 0; i < 3; ++i) {
            Rational c = rng.coeff();
            for (unsigned j = 0; j < 6; ++j)
                p[j] += c * w.rows()(i, j);
        }
        if (is_zero_vector(p))
            continue;
        EXPECT_GE(degeneracy_dim(a, p), 1u);
    }
}

#include "oplat/instances.hpp"
#include "oplat/projlattice.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace oplat;

namespace {

Projection dproj(std::initializer_list<double> d) {
    RVec v(static_cast<int>(d.size()));
    int i = 0;
    for (double x : d) v(i++) = x;
    return Projection(Element(Algebra::matrix(v.size()), Mat(v.cast<cplx>().asDiagonal())));
}

Projection line(const Algebra& alg, const Vec& v) { return Projection::from_basis(alg, Mat(v / v.norm())); }

// Oracle: the intersection of ranges from the stacked basis kernel, [P_basis, -Q_basis] y = 0.
int intersection_dim(const Projection& p, const Projection& q) {
    if (p.rank() == 0 || q.rank() == 0) return 0;
    Mat M(p.basis().rows(), p.rank() + q.rank());
    M << p.basis(), -q.basis();
    Eigen::JacobiSVD<Mat> svd(M);
    int k = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) < 1e-9) ++k;
    return k + static_cast<int>(M.cols() - svd.singularValues().size());
}

}  // namespace

TEST(Wedge, Examples) {
    EXPECT_TRUE(wedge_exact(dproj({1, 1, 0}), dproj({0, 1, 1})).equals(dproj({0, 1, 0}), 1e-12));
    Rng rng(1);
    Algebra m2 = Algebra::matrix(2);
    Projection p = Projection(Element(m2, random_projection_matrix(rng, 2, 1)));
    EXPECT_TRUE(wedge_exact(p, p).equals(p, 1e-10));
    Projection q = Projection(Element(m2, random_projection_matrix(rng, 2, 1)));
    EXPECT_EQ(wedge_exact(p, q).rank(), 0);
}

TEST(Wedge, RankMatchesIntersectionOracle) {
    Rng rng(2);
    for (int i = 0; i < 300; ++i) {
        const int n = uniform_int(rng, 2, 6);
        Algebra alg = Algebra::matrix(n);
        Mat U = random_unitary(rng, n);
        const int common = uniform_int(rng, 0, n / 2);
        // p, q share `common` directions and add random ones
        auto build = [&](int extra) {
            Mat b(n, common + extra);
            b << U.leftCols(common), random_unitary(rng, n).leftCols(extra);
            Eigen::HouseholderQR<Mat> qr(b);
            return Projection::from_basis(alg, Mat(qr.householderQ()).leftCols(common + extra));
        };
        Projection p = build(uniform_int(rng, 0, n - common - 1)), q = build(uniform_int(rng, 0, n - common - 1));
        Projection w = wedge_exact(p, q);
        EXPECT_EQ(w.rank(), intersection_dim(p, q));
        EXPECT_TRUE(w.leq(p));
        EXPECT_TRUE(w.leq(q));
    }
}

TEST(Wedge, IterativeExamples) {
    Algebra m3 = Algebra::matrix(3);
    Projection p = dproj({1, 1, 0}), q = dproj({0, 1, 1});
    IterativeWedge w = wedge_iterative(p, q);
    EXPECT_TRUE(w.converged);
    EXPECT_EQ(w.iterations, 1);
    EXPECT_TRUE(w.value.equals(dproj({0, 1, 0}), 1e-12));

    // θ = π/4: ‖(pq)^n p‖ = 2^-n
    auto [a, b] = angle_pair(Algebra::matrix(2), std::acos(-1.0) / 4);
    Mat A = a.base().dense(), B = b.base().dense(), x = A;
    for (int n = 1; n <= 20; ++n) {
        x = A * B * x;
        EXPECT_NEAR(Eigen::JacobiSVD<Mat>(x).singularValues()(0), std::pow(2.0, -n), 1e-15);
    }
    IterativeWedge r = wedge_iterative(a, b);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.value.rank(), 0);
}

TEST(Wedge, IterativeMatchesExact) {
    Rng rng(8);
    Algebra m8 = Algebra::matrix(8);
    for (int i = 0; i < 500; ++i) {
        Projection p = random_projection(rng, m8), q = random_projection(rng, m8);
        IterativeWedge w = wedge_iterative(p, q);
        ASSERT_TRUE(w.converged);
        EXPECT_LE(w.value.base().max_abs_diff(wedge_exact(p, q).base()), 1e-8);
    }
}

TEST(Wedge, CommutingInputsOneStep) {
    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const int n = uniform_int(rng, 2, 6);
        Algebra alg = Algebra::matrix(n);
        Mat U = random_unitary(rng, n);
        RVec dp(n), dq(n);
        for (int k = 0; k < n; ++k) {
            dp(k) = uniform_int(rng, 0, 1);
            dq(k) = uniform_int(rng, 0, 1);
        }
        Projection p(Element(alg, Mat(U * dp.cast<cplx>().asDiagonal() * U.adjoint())));
        Projection q(Element(alg, Mat(U * dq.cast<cplx>().asDiagonal() * U.adjoint())));
        IterativeWedge w = wedge_iterative(p, q);
        EXPECT_LE(w.iterations, 1);
        EXPECT_TRUE(w.value.equals(Projection(Element(alg, Mat(p.base().dense() * q.base().dense()))), 1e-9));
    }
}

TEST(Wedge, AngleRateBound) {
    const double tol = 1e-12;
    for (double theta = 0.02; theta < 1.55; theta += 0.01) {
        auto [p, q] = angle_pair(Algebra::matrix(2), theta);
        IterativeWedge w = wedge_iterative(p, q, tol);
        const double c2 = std::cos(theta) * std::cos(theta);
        ASSERT_TRUE(w.converged) << theta;
        EXPECT_EQ(w.value.rank(), 0);
        EXPECT_LE(w.iterations, static_cast<long long>(std::ceil(std::log(tol) / std::log(c2))) + 1) << theta;
    }
}

TEST(Wedge, ReportsNonConvergence) {
    auto [p, q] = angle_pair(Algebra::matrix(2), 0.01);
    IterativeWedge w = wedge_iterative(p, q, 1e-12, 10);
    EXPECT_FALSE(w.converged);
    EXPECT_GT(w.gap, 1e-12);
}

TEST(Vee, DeMorganAndBounds) {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        Algebra alg = Algebra::matrix(uniform_int(rng, 2, 6));
        Projection p = random_projection(rng, alg), q = random_projection(rng, alg);
        Projection v = vee(p, q);
        EXPECT_TRUE(p.leq(v));
        EXPECT_TRUE(q.leq(v));
        EXPECT_EQ(v.rank(), p.rank() + q.rank() - wedge_exact(p, q).rank());
        EXPECT_TRUE(v.complement().equals(wedge_exact(p.complement(), q.complement()), 1e-9));
    }
}

TEST(CommutingBounds, Examples) {
    Rng rng(6);
    Algebra m2 = Algebra::matrix(2);
    Projection e = dproj({1, 0, 0}), f = dproj({1, 1, 0});
    CommutingBounds b = commuting_bounds(e, f);
    EXPECT_TRUE(b.lower.equals(e, 1e-12));
    EXPECT_TRUE(b.upper.equals(e, 1e-12));

    Projection g = Projection(Element(m2, random_projection_matrix(rng, 2, 1)));
    Projection h = Projection(Element(m2, random_projection_matrix(rng, 2, 1)));
    CommutingBounds gb = commuting_bounds(g, h);
    EXPECT_EQ(gb.lower.rank(), 0);
    EXPECT_EQ(gb.upper.rank(), 2);
}

TEST(CommutingBounds, Properties) {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        Algebra alg = Algebra::matrix(uniform_int(rng, 2, 6));
        Projection e = random_projection(rng, alg), f = random_projection(rng, alg);
        CommutingBounds b = commuting_bounds(e, f);
        EXPECT_TRUE(b.lower.leq(e));
        EXPECT_TRUE(e.leq(b.upper));
        EXPECT_TRUE(predicates(b.lower, f).commuting);
        EXPECT_TRUE(predicates(b.upper, f).commuting);
        const bool same = b.lower.equals(e, 1e-8) && b.upper.equals(e, 1e-8);
        EXPECT_EQ(same, predicates(e, f).commuting);
    }
}

TEST(CommutingBounds, Multiplet) {
    Rng rng(8);
    Algebra m3 = Algebra::matrix(3);
    for (int i = 0; i < 50; ++i) {
        Projection e = Projection(Element(m3, random_projection_matrix(rng, 3, 1)));
        std::vector<Projection> F{Projection(Element(m3, random_projection_matrix(rng, 3, 1))),
                                  Projection(Element(m3, random_projection_matrix(rng, 3, 1)))};
        CommutingBounds b = commuting_bounds_multi(e, F);
        EXPECT_LE(b.steps, 3);
        for (const auto& f : F) EXPECT_TRUE(predicates(b.upper, f).commuting);
        EXPECT_TRUE(e.leq(b.upper));
        EXPECT_TRUE(b.lower.leq(e));
    }
    for (int i = 0; i < 100; ++i) {
        const int n = uniform_int(rng, 2, 7);
        Algebra alg = Algebra::matrix(n);
        std::vector<Projection> F;
        for (int k = uniform_int(rng, 1, 4); k > 0; --k) F.push_back(random_projection(rng, alg));
        EXPECT_LE(commuting_bounds_multi(random_projection(rng, alg), F).steps, n);
    }
}

TEST(Predicates, Examples) {
    Rng rng(9);
    Algebra m3 = Algebra::matrix(3);
    Projection p = random_projection(rng, m3);
    PairFlags f = predicates(p, p.complement());
    EXPECT_TRUE(f.orthogonal);
    EXPECT_TRUE(f.coorthogonal);
    EXPECT_TRUE(f.commuting);
}

TEST(Laws, DistributivityWitnessInM2) {
    Algebra m2 = Algebra::matrix(2);
    Vec a(2), b(2), c(2);
    a << 1, 0;
    b << 0, 1;
    c << 1, 1;
    Projection e = line(m2, a), f = line(m2, b), g = line(m2, c);
    LawProbe d = distributivity_probe(g, e, f);  // g ∧ (e ∨ f) = g, but (g∧e) ∨ (g∧f) = 0
    EXPECT_FALSE(d.holds);
    EXPECT_EQ(d.lhs.rank(), 1);
    EXPECT_EQ(d.rhs.rank(), 0);
    EXPECT_TRUE(modularity_probe(e, g, Projection::unit(m2)).holds);
    EXPECT_THROW(modularity_probe(g, e, f), std::invalid_argument);
}

TEST(Laws, DiagonalProjectionsAreBoolean) {
    for (uint32_t a = 0; a < 8; ++a)
        for (uint32_t b = 0; b < 8; ++b)
            for (uint32_t c = 0; c < 8; ++c) {
                auto dp = [](uint32_t m) {
                    return dproj({double(m & 1u), double(m >> 1 & 1u), double(m >> 2 & 1u)});
                };
                EXPECT_TRUE(distributivity_probe(dp(a), dp(b), dp(c)).holds);
                if ((a & c) == a) EXPECT_TRUE(modularity_probe(dp(a), dp(b), dp(c)).holds);
            }
}

TEST(Laws, ModularInFiniteDimensions) {
    Rng rng(10);
    for (int i = 0; i < 100; ++i) {
        Algebra alg = Algebra::matrix(uniform_int(rng, 2, 5));
        Projection e = random_projection(rng, alg), f = random_projection(rng, alg);
        Projection g = vee(e, random_projection(rng, alg));
        EXPECT_TRUE(modularity_probe(e, f, g).holds);
    }
}

TEST(Angles, PrincipalCosines) {
    auto [p, q] = angle_pair(Algebra::matrix(3), 0.3);
    auto cs = principal_cosines(p, q);
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_NEAR(std::acos(cs[0]), 0.3, 1e-12);
    EXPECT_THROW(angle_pair(Algebra::commutative(2), 0.3), std::invalid_argument);
}

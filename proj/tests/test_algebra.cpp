#include "oplat/algebra.hpp"
#include "oplat/instances.hpp"
#include "oplat/lp.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace oplat;

namespace {

Mat m2(cplx a, cplx b, cplx c, cplx d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

Mat diag(std::initializer_list<double> d) {
    RVec v(static_cast<int>(d.size()));
    int i = 0;
    for (double x : d) v(i++) = x;
    return v.cast<cplx>().asDiagonal();
}

Element mat_el(const Mat& m) { return Element(Algebra::matrix(static_cast<int>(m.rows())), m); }

}  // namespace

TEST(Positivity, Examples) {
    EXPECT_TRUE(is_positive(mat_el(diag({4, 9}))));
    EXPECT_FALSE(is_positive(mat_el(m2(1, 2, 2, 1))));
    EXPECT_TRUE(is_positive(mat_el(m2(2, 1, 1, 1))));
}

TEST(FunctionalCalculus, Examples) {
    EXPECT_LT(func_calc(mat_el(diag({4, 9})), Func::sqrt).max_abs_diff(mat_el(diag({2, 3}))), 1e-12);
    EXPECT_LT(func_calc(mat_el(diag({1, -1})), Func::square).max_abs_diff(mat_el(diag({1, 1}))), 1e-12);
    const double r3 = std::sqrt(3.0);
    Mat want = 0.5 * m2(1 + r3, r3 - 1, r3 - 1, 1 + r3);
    EXPECT_LT(func_calc(mat_el(m2(2, 1, 1, 2)), Func::sqrt).max_abs_diff(mat_el(want)), 1e-12);
}

TEST(FunctionalCalculus, RootSquaresBack) {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        Element x = random_psd(rng, Algebra::matrix(4));
        Element r = func_calc(x, Func::sqrt);
        EXPECT_LT(r.square().max_abs_diff(x), 1e-10);
        EXPECT_TRUE(is_positive(r));
    }
}

TEST(SupportProjection, Examples) {
    EXPECT_LT(support_projection(mat_el(diag({0, 2}))).base().max_abs_diff(mat_el(diag({0, 1}))), 1e-12);
    EXPECT_EQ(support_projection(mat_el(diag({0, 0}))).rank(), 0);
    Vec xi(2);
    xi << 1, 1;
    xi /= std::sqrt(2.0);
    Mat P = xi * xi.adjoint();
    EXPECT_LT(support_projection(mat_el(3.0 * P)).base().max_abs_diff(mat_el(P)), 1e-12);
}

TEST(SpectralProjections, Examples) {
    auto sp = spectral_projections(mat_el(diag({3, 1})), 2, 4);
    EXPECT_LT(sp.sub.base().max_abs_diff(mat_el(diag({0, 1}))), 1e-12);
    EXPECT_LT(sp.sup.base().max_abs_diff(mat_el(diag({1, 0}))), 1e-12);
    auto band = spectral_projections(mat_el(diag({5, 3, 1})), 2, 4).band;
    EXPECT_LT(band.base().max_abs_diff(mat_el(diag({0, 1, 0}))), 1e-12);
}

TEST(ChainDecomposition, Examples) {
    auto c = chain_decomposition(mat_el(diag({3, 3, 1})));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_DOUBLE_EQ(c[0].alpha, 2);
    EXPECT_LT(c[0].p.base().max_abs_diff(mat_el(diag({1, 1, 0}))), 1e-12);
    EXPECT_DOUBLE_EQ(c[1].alpha, 1);
    EXPECT_EQ(c[1].p.rank(), 3);

    auto d = chain_decomposition(mat_el(diag({5, 2, 2, 0})));
    ASSERT_EQ(d.size(), 2u);
    EXPECT_DOUBLE_EQ(d[0].alpha, 3);
    EXPECT_LT(d[0].p.base().max_abs_diff(mat_el(diag({1, 0, 0, 0}))), 1e-12);
    EXPECT_DOUBLE_EQ(d[1].alpha, 2);
    EXPECT_LT(d[1].p.base().max_abs_diff(mat_el(diag({1, 1, 1, 0}))), 1e-12);

    Rng rng(1);
    Projection p = random_projection(rng, Algebra::matrix(3));
    if (p.rank() > 0) {
        auto e = chain_decomposition(p.base());
        ASSERT_EQ(e.size(), 1u);
        EXPECT_NEAR(e[0].alpha, 1, 1e-12);
    }
}

TEST(ChainDecomposition, ReassemblyAndNesting) {
    Rng rng(9);
    for (int i = 0; i < 100; ++i) {
        Algebra alg = i % 2 ? Algebra::matrix(uniform_int(rng, 2, 5)) : Algebra::commutative(uniform_int(rng, 2, 6));
        Element x = random_psd(rng, alg);
        auto c = chain_decomposition(x);
        EXPECT_LT(reassemble(alg, c).max_abs_diff(x), 1e-9);
        for (size_t k = 0; k + 1 < c.size(); ++k) {
            EXPECT_TRUE(c[k].p.leq(c[k + 1].p));
            EXPECT_LT(c[k].p.rank(), c[k + 1].p.rank());
        }
        for (const auto& t : c) EXPECT_GT(t.alpha, 0);
    }
}

TEST(States, Examples) {
    Vec e0 = Vec::Zero(2), e1 = Vec::Zero(2);
    e0(0) = 1;
    e1(1) = 1;
    State mixed = State::mixture({{0.5, e0}, {0.5, e1}});
    EXPECT_NEAR(mixed(mat_el(diag({1, 3}))), 2, 1e-14);
    EXPECT_NEAR(State::vector(e0)(mat_el(diag({1, 3}))), 1, 1e-14);
    Vec xi(2);
    xi << 1, 2;
    xi /= std::sqrt(5.0);
    EXPECT_NEAR(State::vector(xi)(mat_el(diag({1, -1}))), -0.6, 1e-14);
}

TEST(States, MonotoneAndSchwarz) {
    Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        Algebra alg = Algebra::matrix(uniform_int(rng, 2, 5));
        Element x = random_selfadjoint(rng, alg);
        Element y = x + random_psd(rng, alg);
        State rho = random_pure_state(rng, alg);
        EXPECT_LE(rho(x), rho(y) + 1e-10);
        EXPECT_GE(rho(x.square()), rho(x) * rho(x) - 1e-10);
    }
}

TEST(Separation, Examples) {
    Algebra alg = Algebra::commutative(2);
    std::vector<Element> span{Element(alg, RVec(RVec::Unit(2, 0))), Element(alg, RVec(RVec::Unit(2, 1)))};
    auto c = separate_states(span, State::point(0), State::point(1), 0.1);
    ASSERT_TRUE(c.has_value());
    EXPECT_NEAR(c->values()(0), 1, 1e-10);
    EXPECT_NEAR(c->values()(1), 0, 1e-10);
    EXPECT_FALSE(separate_states(span, State::point(0), State::point(0), 0.1).has_value());
}

TEST(Separation, MatrixPureStates) {
    Algebra alg = Algebra::matrix(2);
    std::vector<Element> span;
    for (int i = 0; i < 4; ++i) {
        Mat b = Mat::Zero(2, 2);
        if (i < 2) b(i, i) = 1;
        else if (i == 2) b(0, 1) = b(1, 0) = 1;
        else {
            b(0, 1) = cplx(0, 1);
            b(1, 0) = cplx(0, -1);
        }
        span.emplace_back(alg, b);
    }
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
        State rho = random_pure_state(rng, alg), sigma = random_pure_state(rng, alg);
        auto c = separate_states(span, rho, sigma, 0.01);
        ASSERT_TRUE(c.has_value());
        EXPECT_NEAR(rho(*c), 1, 1e-8);
        EXPECT_LE(sigma(*c), 0.01 + 1e-8);
        EXPECT_GE(c->min_eig(), -1e-8);
    }
}

// ---- LP: vertex enumeration oracle ----

namespace {

// min c.x over {A x <= b, x >= 0} for a bounded region; nullopt when empty.
std::optional<double> vertex_oracle(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    const int n = static_cast<int>(c.size()), m = static_cast<int>(A.rows());
    Eigen::MatrixXd G(m + n, n);
    Eigen::VectorXd h(m + n);
    G << A, -Eigen::MatrixXd::Identity(n, n);
    h << b, Eigen::VectorXd::Zero(n);
    std::optional<double> best;
    std::vector<int> pick(n);
    // all n-subsets of the m+n constraints
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == n) {
            Eigen::MatrixXd M(n, n);
            Eigen::VectorXd r(n);
            for (int i = 0; i < n; ++i) {
                M.row(i) = G.row(pick[i]);
                r(i) = h(pick[i]);
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
            if (lu.rank() < n) return;
            Eigen::VectorXd x = lu.solve(r);
            if (((G * x - h).array() > 1e-9).any()) return;
            double v = c.dot(x);
            if (!best || v < *best) best = v;
            return;
        }
        for (int i = start; i < m + n; ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return best;
}

}  // namespace

TEST(LinearProgram, MatchesVertexOracle) {
    Rng rng(77);
    int infeasible = 0;
    for (int t = 0; t < 300; ++t) {
        const int n = uniform_int(rng, 1, 3), m = uniform_int(rng, 1, 4);
        Eigen::MatrixXd A(m + 1, n);
        Eigen::VectorXd b(m + 1), c(n);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) A(i, j) = uniform_int(rng, -4, 4);
            b(i) = uniform_int(rng, -3, 6);
        }
        A.row(m).setOnes();  // keeps the region bounded
        b(m) = 10;
        for (int j = 0; j < n; ++j) c(j) = uniform_int(rng, -5, 5);

        auto want = vertex_oracle(c, A, b);
        LpResult got = lp_minimize(c, A, b, Eigen::MatrixXd(0, n), Eigen::VectorXd(0));
        if (!want) {
            ++infeasible;
            EXPECT_EQ(got.status, LpResult::Status::infeasible);
            continue;
        }
        ASSERT_TRUE(got.ok());
        EXPECT_NEAR(got.value, *want, 1e-8);
        EXPECT_LE(((A * got.x - b).array()).maxCoeff(), 1e-8);
        EXPECT_GE(got.x.minCoeff(), -1e-9);
    }
    EXPECT_GT(infeasible, 0);  // both branches exercised
}

TEST(LinearProgram, EqualityAndUnbounded) {
    Eigen::VectorXd c(2);
    c << 1, 1;
    Eigen::MatrixXd Aeq(1, 2);
    Aeq << 1, 2;
    Eigen::VectorXd beq(1);
    beq << 4;
    LpResult r = lp_minimize(c, Eigen::MatrixXd(0, 2), Eigen::VectorXd(0), Aeq, beq);
    ASSERT_TRUE(r.ok());
    EXPECT_NEAR(r.value, 2, 1e-12);  // x = (0, 2)

    c << -1, 0;
    LpResult u = lp_minimize(c, Eigen::MatrixXd(0, 2), Eigen::VectorXd(0), Eigen::MatrixXd(0, 2), Eigen::VectorXd(0));
    EXPECT_EQ(u.status, LpResult::Status::unbounded);
}

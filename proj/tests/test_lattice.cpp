#include "oplat/instances.hpp"
#include "oplat/lattice.hpp"

#include <gtest/gtest.h>

using namespace oplat;

namespace {

const Algebra C2 = Algebra::commutative(2);

Element tup(const Algebra& alg, std::initializer_list<double> xs) {
    RVec v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v(i++) = x;
    return Element(alg, v);
}

BasicElement bas(const Algebra& alg, std::initializer_list<std::initializer_list<double>> gens) {
    std::vector<Element> g;
    for (auto xs : gens) g.push_back(tup(alg, xs));
    return BasicElement::basic(g);
}

RVec rv(std::initializer_list<double> xs) {
    RVec v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

// pointwise oracle for π: min over generators of the positive part minus the same for the negative part
RVec pi_oracle(const LatticeElement& A) {
    auto side = [](const BasicElement& B) {
        RVec out = B.gens.front().values();
        for (const auto& g : B.gens) out = B.polarity == Polarity::basic ? RVec(out.cwiseMin(g.values()))
                                                                          : RVec(out.cwiseMax(g.values()));
        return out;
    };
    return side(A.pos) - side(A.neg);
}

}  // namespace

TEST(Equivalence, Examples) {
    BasicElement C = bas(C2, {{1, 2}, {2, 1}});
    BasicElement D = bas(C2, {{1, 2}, {2, 1}, {2, 2}});
    EXPECT_TRUE(equivalent(C, D).holds);
    EXPECT_TRUE(equivalent(C, D).exact);
    EXPECT_FALSE(equivalent(bas(C2, {{1, 2}}), bas(C2, {{2, 1}})).holds);
    EXPECT_TRUE(equivalent(C, C).holds);
}

TEST(Equivalence, HullNotJustGenerators) {
    // (1.5,1.5) dominates the midpoint of (1,2) and (2,1) without dominating either
    EXPECT_TRUE(equivalent(bas(C2, {{1, 2}, {2, 1}}), bas(C2, {{1, 2}, {2, 1}, {1.5, 1.5}})).holds);
    EXPECT_TRUE(dominates_hull({tup(C2, {1.5, 1.5})}, {tup(C2, {1, 2}), tup(C2, {2, 1})}));
    EXPECT_FALSE(dominates_hull({tup(C2, {1.4, 1.5})}, {tup(C2, {1, 2}), tup(C2, {2, 1})}));
}

TEST(Arithmetic, Examples) {
    BasicElement s = minkowski_sum(bas(C2, {{1, 2}}), bas(C2, {{3, -1}}));
    ASSERT_EQ(s.gens.size(), 1u);
    EXPECT_EQ(s.gens[0].values(), rv({4, 1}));

    LatticeElement C = LatticeElement::from(bas(C2, {{1, 2}, {2, 1}}));
    EXPECT_TRUE(equivalent(scale(C, 2), add(C, C)).holds);

    LatticeElement A{bas(C2, {{1, 0}}), bas(C2, {{0, 1}})}, B{bas(C2, {{0, 1}}), bas(C2, {{1, 0}})};
    EXPECT_TRUE(equivalent(add(A, B), LatticeElement::zero(C2)).holds);
    EXPECT_THROW(scale(A, -1), std::invalid_argument);
}

TEST(Arithmetic, Cancellation) {
    Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        Algebra alg = Algebra::commutative(3);
        LatticeElement A = random_dyadic_lattice(rng, alg, 3), E = random_dyadic_lattice(rng, alg, 3);
        LatticeElement B = uniform(rng, 0, 1) < 0.5 ? A : random_dyadic_lattice(rng, alg, 3);
        EXPECT_EQ(equivalent(add(A, E), add(B, E)).holds, equivalent(A, B).holds);
    }
}

TEST(LatticeOps, Examples) {
    LatticeElement x = LatticeElement::from(bas(C2, {{1, 3}}));
    EXPECT_TRUE(equivalent(wedge(x, x), x).holds);
    LatticeElement a = LatticeElement::from(bas(C2, {{1, 2}})), b = LatticeElement::from(bas(C2, {{2, 1}}));
    EXPECT_EQ(pi(wedge(a, b)).values, rv({1, 1}));
    EXPECT_EQ(pi(vee(a, b)).values, rv({2, 2}));
}

TEST(Decomposition, Examples) {
    auto d = min_positive_decomposition(LatticeElement::image(tup(C2, {1, -1})));
    EXPECT_EQ(pi(d.plus).values, rv({1, 0}));
    EXPECT_EQ(pi(d.minus).values, rv({0, 1}));
    auto p = min_positive_decomposition(LatticeElement::from(bas(C2, {{1, 2}, {3, 0.5}})));
    EXPECT_TRUE(equivalent(p.minus, LatticeElement::zero(C2)).holds);
}

TEST(Decomposition, MinimalAmongDecompositions) {
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        Algebra alg = Algebra::commutative(3);
        LatticeElement A = random_dyadic_lattice(rng, alg, 3);
        auto d = min_positive_decomposition(A);
        // any P >= max(A, 0) gives A = P - (P - A); the minimal one is below it
        LatticeElement P = shift(d.plus, uniform_int(rng, 0, 8) / 8.0);
        EXPECT_TRUE(less_equal(d.plus, P).holds);
        EXPECT_EQ(pi(d.plus).values, pi_oracle(A).cwiseMax(0.0));
        EXPECT_EQ(pi(d.minus).values, (-pi_oracle(A)).cwiseMax(0.0));
    }
}

TEST(Norm, Examples) {
    Interval n = norm(bas(C2, {{1, 2}}));
    EXPECT_EQ(n.lower, 2);
    EXPECT_EQ(n.upper, 2);
    EXPECT_EQ(norm(BasicElement::single(Element::unit(C2))).upper, 1);
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        Algebra alg = Algebra::matrix(3);
        Element a = random_selfadjoint(rng, alg);
        Interval m = norm(LatticeElement::image(a));
        EXPECT_LE(m.lower, a.norm() + 1e-9);
        EXPECT_GE(m.upper, a.norm() - 1e-9);
        EXPECT_LT(m.width(), 1e-9);
    }
}

TEST(Norm, TriangleInequality) {
    Rng rng(6);
    for (int i = 0; i < 100; ++i) {
        Algebra alg = Algebra::commutative(4);
        LatticeElement A = random_dyadic_lattice(rng, alg, 3), B = random_dyadic_lattice(rng, alg, 3);
        EXPECT_LE(norm(add(A, B)).upper, norm(A).upper + norm(B).upper + 1e-12);
    }
}

TEST(Complements, Examples) {
    LatticeElement x = LatticeElement::from(bas(C2, {{1, 3}}));
    Complements c = complements(x);
    EXPECT_TRUE(equivalent(c.upper, x).holds);
    EXPECT_EQ(pi(c.lower).values, pi(x).values);

    LatticeElement P{bas(C2, {{2, 2}}), bas(C2, {{1, 0}, {0, 1}})};
    RVec pp = pi(P).values, pu = pi(complements(P).upper).values;
    EXPECT_TRUE(((pu - pp).array() >= 0).all());
}

TEST(Complements, ChainInequality) {
    Rng rng(44);
    for (int i = 0; i < 200; ++i) {
        Algebra alg = Algebra::commutative(uniform_int(rng, 2, 4));
        Complements c = complements(random_dyadic_lattice(rng, alg, 3));
        EXPECT_TRUE(less_equal(c.lower, c.upper_cc).holds);
        EXPECT_TRUE(less_equal(c.upper_cc, c.lower_cc).holds);
        EXPECT_TRUE(less_equal(c.lower_cc, c.upper).holds);
    }
}

TEST(Pi, Examples) {
    EXPECT_EQ(pi(bas(C2, {{1, 2}, {2, 1}})).values, rv({1, 1}));
    Element a = tup(Algebra::commutative(3), {0.5, -2, 7});
    EXPECT_EQ(pi(LatticeElement::image(a)).values, a.values());
    EXPECT_THROW(pi(LatticeElement::image(Element::unit(Algebra::matrix(2)))), std::invalid_argument);
}

TEST(Pi, LinearMonotoneLatticeMap) {
    Rng rng(500);
    for (int i = 0; i < 500; ++i) {
        Algebra alg = Algebra::commutative(uniform_int(rng, 1, 5));
        LatticeElement A = random_dyadic_lattice(rng, alg, 3), B = random_dyadic_lattice(rng, alg, 3);
        const double a = uniform_int(rng, 0, 16) / 8.0;
        ASSERT_EQ(pi(A).values, pi_oracle(A));
        EXPECT_EQ(pi(add(A, B)).values, RVec(pi_oracle(A) + pi_oracle(B)));
        EXPECT_EQ(pi(scale(A, a)).values, RVec(a * pi_oracle(A)));
        EXPECT_EQ(pi(wedge(A, B)).values, RVec(pi_oracle(A).cwiseMin(pi_oracle(B))));
        EXPECT_EQ(pi(vee(A, B)).values, RVec(pi_oracle(A).cwiseMax(pi_oracle(B))));
        // the formal order is finer than the pointwise one; π only has to respect it
        if (less_equal(A, B).holds) EXPECT_TRUE(((pi_oracle(B) - pi_oracle(A)).array() >= 0).all());
        EXPECT_TRUE(less_equal(wedge(A, B), A).holds);
        EXPECT_TRUE(less_equal(A, vee(A, B)).holds);
    }
}

TEST(StateRep, Examples) {
    Algebra m2 = Algebra::matrix(2);
    Mat d1 = Mat::Zero(2, 2), d2 = Mat::Zero(2, 2);
    d1(0, 0) = 1;
    d1(1, 1) = 2;
    d2(0, 0) = 2;
    d2(1, 1) = 1;
    BasicElement C = BasicElement::basic({Element(m2, d1), Element(m2, d2)});
    Vec e0 = Vec::Unit(2, 0), e1 = Vec::Unit(2, 1);
    State mixed = State::mixture({{0.5, e0}, {0.5, e1}});
    EXPECT_NEAR(s_rep(C, mixed), 1.5, 1e-14);
    EXPECT_NEAR(s_rep(BasicElement::single(Element(m2, d1)), State::vector(e1)), 2, 1e-14);
}

TEST(StateRep, Additive) {
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        Algebra alg = Algebra::matrix(3);
        LatticeElement A{random_psd_basic(rng, alg, 3), random_psd_basic(rng, alg, 2)};
        LatticeElement B{random_psd_basic(rng, alg, 2), random_psd_basic(rng, alg, 2)};
        State rho = random_pure_state(rng, alg);
        EXPECT_NEAR(s_rep(add(A, B), rho), s_rep(A, rho) + s_rep(B, rho), 1e-10);
    }
}

TEST(Lifts, Examples) {
    BasicElement C = bas(C2, {{1, 2}, {2, 1}});
    L1Image v = pi(C);
    EXPECT_EQ(pi(cv_lift(v)).values, v.values);
    EXPECT_EQ(pi(cc_lift(v)).values, v.values);
    Complements cm = complements(LatticeElement::from(C));
    EXPECT_TRUE(equivalent(cv_lift(v), cm.lower_cc).holds);
    EXPECT_TRUE(equivalent(cc_lift(v), cm.lower).holds);
    L1Image one{C2, rv({1, 1})};
    EXPECT_TRUE(equivalent(cv_lift(one), LatticeElement::image(Element::unit(C2))).holds);
    EXPECT_TRUE(equivalent(cc_lift(one), LatticeElement::image(Element::unit(C2))).holds);
}

TEST(Lifts, ConcaveBelowConvex) {
    Rng rng(200);
    for (int i = 0; i < 200; ++i) {
        Algebra alg = Algebra::commutative(uniform_int(rng, 1, 4));
        L1Image v{alg, dyadic_tuple(rng, alg.dim, -2, 2)};
        EXPECT_TRUE(less_equal(cc_lift(v), cv_lift(v)).holds);
        EXPECT_EQ(pi(cv_lift(v)).values, v.values);
        EXPECT_EQ(pi(cc_lift(v)).values, v.values);
    }
}

TEST(Restriction, Examples) {
    Algebra big = Algebra::commutative(3);
    Subsystem sub = Subsystem::coordinates(big, {0, 1, -1});
    LatticeElement r = restrict_basic(LatticeElement::from(bas(big, {{1, 2, 5}})), sub);
    EXPECT_EQ(pi(r).values, rv({1, 2}));

    LatticeElement small = LatticeElement::from(bas(sub.small, {{3, -1}, {0, 4}}));
    EXPECT_TRUE(equivalent(restrict_basic(include(small, sub), sub), small).holds);
}

TEST(Restriction, ReducingBelowRetraction) {
    Rng rng(300);
    for (int i = 0; i < 300; ++i) {
        Algebra big = Algebra::commutative(4);
        std::vector<int> block(4);
        for (auto& b : block) b = uniform_int(rng, -1, 1);
        block[0] = 0;
        block[1] = 1;
        Subsystem sub = Subsystem::coordinates(big, block);
        LatticeElement A = random_dyadic_lattice(rng, big, 3);
        EXPECT_TRUE(less_equal(restrict_antibasic(A, sub), restrict_basic(A, sub)).holds);
    }
}

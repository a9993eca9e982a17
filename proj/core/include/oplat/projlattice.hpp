#pragma once

#include "oplat/algebra.hpp"

#include <string>
#include <vector>

namespace oplat {

// Range intersection from the null space of 2 - p - q.
Projection wedge_exact(const Projection& p, const Projection& q);
Projection vee(const Projection& p, const Projection& q);

struct IterativeWedge {
    Projection value;
    long long iterations = 0;  // n with x_n = (pq)^n p the first stationary iterate
    double gap = 0;            // ‖x_n - x_{n+1}‖ at exit
    bool converged = false;
};

// Alternating products x_n = (pq)^n p. After kPlainSteps plain steps the
// iteration continues by repeated squaring of x_n = (pqp)^n; the reported
// count is the equivalent n.
inline constexpr int kPlainSteps = 64;
IterativeWedge wedge_iterative(const Projection& p, const Projection& q, double tol = 1e-12,
                               long long max_iter = 1LL << 40);

struct CommutingBounds {
    Projection lower;  // e_f
    Projection upper;  // e^f
    int steps = 0;     // strict changes (multiplet version)
};
CommutingBounds commuting_bounds(const Projection& e, const Projection& f);
CommutingBounds commuting_bounds_multi(const Projection& e, const std::vector<Projection>& F);

struct PairFlags {
    bool orthogonal = false;
    bool coorthogonal = false;
    bool commuting = false;
};
PairFlags predicates(const Projection& p, const Projection& q);

struct LawProbe {
    bool holds = true;
    double defect = 0;       // ‖lhs - rhs‖
    Projection lhs, rhs;
};
// (e ∨ f) ∧ g = e ∨ (f ∧ g), requires e <= g
LawProbe modularity_probe(const Projection& e, const Projection& f, const Projection& g);
// e ∧ (f ∨ g) = (e ∧ f) ∨ (e ∧ g)
LawProbe distributivity_probe(const Projection& e, const Projection& f, const Projection& g);

// cosines of the principal angles between the ranges, descending
std::vector<double> principal_cosines(const Projection& p, const Projection& q);
// rank-1 pair in M_n (n >= 2) at angle θ, both inside span(e_0, e_1)
std::pair<Projection, Projection> angle_pair(const Algebra& alg, double theta);

}  // namespace oplat

#pragma once

#include "oplat/algebra.hpp"

#include <cstdint>
#include <vector>

namespace oplat {

enum class Polarity { basic, antibasic };

// Formal infimum (basic) or supremum (antibasic) of finitely many generators.
struct BasicElement {
    Algebra alg;
    std::vector<Element> gens;
    Polarity polarity = Polarity::basic;

    static BasicElement basic(std::vector<Element> gens);
    static BasicElement antibasic(std::vector<Element> gens);
    static BasicElement single(const Element& x) { return basic({x}); }

    BasicElement negated() const;  // inf{c} <-> sup{-c}
    double max_generator_norm() const;
};

// A = C - D with both parts basic. An antibasic sup{p} is stored as 0 - inf{-p}.
struct LatticeElement {
    BasicElement pos;
    BasicElement neg;

    const Algebra& algebra() const { return pos.alg; }

    static LatticeElement from(const BasicElement& b);
    static LatticeElement image(const Element& a);  // {a} - {0}
    static LatticeElement zero(const Algebra& alg);
};

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    double width() const { return upper - lower; }
    double mid() const { return 0.5 * (lower + upper); }
};

// ---- probes ----

// Point states on the spectrum (commutative, exact) or eigenvector states of the
// generators plus k seeded random pure states (matrix, probe-certified).
struct ProbeSet {
    std::vector<State> states;
    bool exact = false;
};
inline constexpr int kDefaultRandomProbes = 64;
ProbeSet make_probes(const Algebra& alg, const std::vector<LatticeElement>& elems, int k = kDefaultRandomProbes,
                     uint64_t seed = 0x5eed);

// s_ρ(basic C) = min over generators of ρ(c); s_ρ(antibasic P) = max.
double s_rep(const BasicElement& C, const State& rho);
double s_rep(const LatticeElement& A, const State& rho);

struct Decision {
    bool holds = false;
    bool exact = false;
    const char* certainty() const { return exact ? "exact" : "probe-certified"; }
};

Decision equivalent(const BasicElement& C, const BasicElement& D, int probes = kDefaultRandomProbes);
Decision equivalent(const LatticeElement& A, const LatticeElement& B, int probes = kDefaultRandomProbes);
// A <= B: exact (LP) in the commutative kind, probe order otherwise.
Decision less_equal(const LatticeElement& A, const LatticeElement& B, int probes = kDefaultRandomProbes);

// each generator of `upper` dominates a convex combination of `lower` (commutative LP)
bool dominates_hull(const std::vector<Element>& upper, const std::vector<Element>& lower);

// ---- arithmetic and lattice operations ----

BasicElement minkowski_sum(const BasicElement& C, const BasicElement& D);
BasicElement prune(const BasicElement& C);  // drop generators dominating another

LatticeElement add(const LatticeElement& A, const LatticeElement& B);
LatticeElement scale(const LatticeElement& A, double alpha);
LatticeElement negate(const LatticeElement& A);
LatticeElement shift(const LatticeElement& A, double s);  // A + s·1

LatticeElement wedge(const LatticeElement& A, const LatticeElement& B);
LatticeElement vee(const LatticeElement& A, const LatticeElement& B);

struct PositiveDecomposition {
    LatticeElement plus;
    LatticeElement minus;
};
PositiveDecomposition min_positive_decomposition(const LatticeElement& A);

Interval norm(const LatticeElement& A, int probes = kDefaultRandomProbes);
Interval norm(const BasicElement& C, int probes = kDefaultRandomProbes);

struct Complements {
    LatticeElement upper;     // P^c
    LatticeElement lower;     // P_c
    LatticeElement lower_cc;  // P_cc
    LatticeElement upper_cc;  // P^cc
};
Complements complements(const LatticeElement& P);

// ---- the surjection onto L1 (commutative kind) ----

struct L1Image {
    Algebra alg;
    RVec values;
};
L1Image pi(const LatticeElement& A);
L1Image pi(const BasicElement& C);

LatticeElement cv_lift(const L1Image& v);
LatticeElement cc_lift(const L1Image& v);

// ---- restriction to a subsystem ----

// Commutative: each spectrum point maps to a block index of the subsystem or -1
// (coordinate dropped). Matrix: block-diagonal subalgebra in the unitary frame.
struct Subsystem {
    Algebra big;
    Algebra small;              // commutative: C(blocks); matrix: same as big
    std::vector<int> block;     // commutative
    Mat frame;                  // matrix
    std::vector<int> block_sizes;

    static Subsystem coordinates(const Algebra& big, std::vector<int> block);
    static Subsystem block_diagonal(const Algebra& big, const Mat& frame, std::vector<int> sizes);

    Element include(const Element& v) const;     // subsystem -> big
    Element ceil(const Element& x) const;        // least subsystem bound above (generatorwise)
    Element floor(const Element& x) const;
    Element pinch(const Element& x) const;       // matrix: conditional expectation
    bool observed(int t) const { return block.empty() || block[t] >= 0; }
};

LatticeElement restrict_basic(const LatticeElement& A, const Subsystem& sub);
LatticeElement restrict_antibasic(const LatticeElement& A, const Subsystem& sub);
LatticeElement include(const LatticeElement& A, const Subsystem& sub);

}  // namespace oplat

#pragma once

#include "oplat/algebra.hpp"
#include "oplat/projlattice.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oplat {

enum class Decoration { o, co, c, a, a_wedge, a_vee, wedge, vee, x, ax, xx };
const char* decoration_name(Decoration d);
Decoration parse_decoration(const std::string& s);  // "o", "co", "a^", "a∧", "awedge", ...
std::vector<Decoration> parse_decorations(const std::string& csv);

// s on a finite projection family (or on every projection through `rule`).
struct PMapTable {
    Algebra domain_alg;
    Algebra codomain_alg;
    std::vector<Projection> domain;
    std::vector<Projection> values;
    std::function<Projection(const Projection&)> rule;
    Projection unit_image;
    std::set<Decoration> claimed;
    std::string name;

    std::optional<Projection> lookup(const Projection& p) const;
    Projection operator()(const Projection& p) const;  // throws std::out_of_range when p is outside the domain

    // s(0)=0, s(1)=unit_image, monotone on the stored family
    void validate() const;

    static PMapTable identity(const Algebra& alg);
    static PMapTable collapse(const Algebra& alg, const Projection& r);  // s(p)=r for 0 < p < 1
    // M₂: rank-one p goes to the diagonal unit of its larger diagonal entry, ties broken by Re p₁₂ then Im p₁₂
    static PMapTable diagonal_dominant();
    // Boolean lattice 2^m realized in C(m); values[mask] is a codomain mask over C(k)
    static PMapTable boolean(int m, int k, const std::vector<uint32_t>& values);
};

Projection indicator(const Algebra& alg, uint32_t mask);  // commutative kind
uint32_t mask_of(const Projection& p);
std::vector<Projection> boolean_family(const Algebra& alg);  // all 2^m projections of C(m)

// σ(x) = Σ α_k s(p_k) for x >= 0
Element extend_pmap(const PMapTable& s, const Element& x);
// σ(x₊) - σ(x₋)
Element extend_homogenized(const PMapTable& s, const Element& x);

// Input data for x/ax/xx: the split P = P₊ ∪ P₋ and the construction-time order ≺.
struct MixedOrder {
    std::function<bool(const Projection&)> minus;
    std::function<bool(const Projection&, const Projection&)> precedes;
};

struct DecorationFailure {
    int first = -1, second = -1;  // indices into the test set
    std::string detail;
};

struct DecorationReport {
    Decoration decoration = Decoration::o;
    int checked = 0;   // pairs where the hypothesis applied
    int vacuous = 0;
    std::vector<DecorationFailure> failures;
    bool implied_a_checked = false;
    bool implied_a_holds = true;
    bool passed() const { return failures.empty() && implied_a_holds; }
};

using ProjectionPair = std::pair<Projection, Projection>;
std::vector<ProjectionPair> all_pairs(const std::vector<Projection>& family);

DecorationReport check_decoration(const PMapTable& s, Decoration d, const std::vector<ProjectionPair>& test_set,
                                  const MixedOrder* order = nullptr);

// ---- Schwarz inequalities ----

enum class SchwarzKind { ordinary, concave_normal, convex_reverse };
const char* schwarz_kind_name(SchwarzKind k);

struct NormalInstance {
    Element re, im;  // x = re + i·im with [re, im] = 0
};

struct SchwarzSuiteReport {
    SchwarzKind kind = SchwarzKind::ordinary;
    std::vector<DecorationReport> prerequisites;
    bool prerequisites_ok = true;
    std::vector<double> margins;
    double min_margin = 0;
    int violations = 0;
    bool passed() const { return prerequisites_ok && violations == 0; }
};

// ordinary: σ(x²) - σ(x)²; concave_normal: σ(xx*) - σ(x)σ(x)*; convex_reverse: σ(x)σ(x)* - σ(xx*)
SchwarzSuiteReport schwarz_suite(const PMapTable& s, SchwarzKind kind, const std::vector<NormalInstance>& instances);

// ---- coherent lift ----

// q: C(X) -> C(Y) restricts along y -> min(class y); labels[x] is the class of x.
struct QSpec {
    int codomain_points = 0;
    std::vector<int> labels;
};

struct CoherentLift {
    PMapTable table;               // codomain lattice 2^Y -> 2^X
    std::vector<uint32_t> lift;    // lift[T]
    std::vector<int> order;        // processing order of T
};
CoherentLift coherent_lift(const QSpec& q, uint64_t seed = 0);
uint32_t apply_q(const QSpec& q, uint32_t x_mask);

struct LiftCheck {
    bool section = true;   // q∘s = id
    bool monotone = true;
    bool complemented = true;
    bool meets = true;
    bool joins = true;
    bool ok() const { return section && monotone && complemented && meets && joins; }
};
LiftCheck verify_lift(const QSpec& q, const CoherentLift& s);

// ---- signatures ----

struct Signature {
    Vec xi;
    Vec eta;
    // +1 for Λ₊, -1 for Λ₋
    int classify(const Projection& e) const;
    bool plus(const Projection& e) const { return classify(e) > 0; }
    static Signature random(Rng& rng, int n);
};

struct SignatureProbe {
    bool polar = true;
    long long samples = 0;
    std::optional<ProjectionPair> violation;
};
// polar condition on explicitly given orthogonal pairs
SignatureProbe signature_probe(const Signature& sig, const std::vector<ProjectionPair>& pairs);
// randomized search over orthogonal rank-one pairs in M_n; stops at the first violation
SignatureProbe signature_search(const Signature& sig, int n, long long samples, uint64_t seed);

// ---- filters on finite lattices ----

struct FiniteLattice {
    int size = 0;
    std::vector<std::vector<int>> meet, join;
    std::vector<int> complement;
    int bottom = 0, top = 0;
    bool leq(int a, int b) const { return meet[a][b] == a; }
    static FiniteLattice boolean(int m);  // element = bitmask
};

struct FilterReport {
    std::vector<int> cls;      // class id per element
    int classes = 0;
    bool complement_compatible = true;
    bool meet_compatible = true;
    bool join_compatible = true;
    bool ideal = true;
    bool ultra = false;
    std::optional<int> principal_atom;
    std::vector<std::vector<bool>> order;  // quotient order by class
};
void validate_filter(const FiniteLattice& L, const std::vector<bool>& members);
FilterReport filter_ops(const FiniteLattice& L, const std::vector<bool>& members);
std::vector<bool> principal_filter(const FiniteLattice& L, int a);

// ---- Γ ⊂ M₂ ⊗ M_k ----

struct GammaSetup {
    int k = 2;
    Signature tau;  // on the M₂ factor
    // r_Γ on a product minimal projection p⊗q: τ(p)·q
    Mat r_gamma(const Vec& u, const Vec& x) const;
};

struct ForcingCheck {
    bool in_gamma = false;
    bool forced = false;
    Mat value;                  // r_Γ value when in Γ
    Mat u1, u2;                 // conjugating unitaries of two dominating members
    Mat d1, d2;                 // the dominating members of Γ
    Mat v1, v2;                 // their r_Γ values
    double dominance_margin = 0;  // min over both of λmin(d - r)
};
// minimal projection ψψ* in M_{2k}; family = candidate unitaries on the M₂ factor
ForcingCheck force_minimal(const GammaSetup& g, const Vec& psi, const std::vector<Mat>& family);

struct ObstructionWitness {
    int k = 2;
    uint64_t seed = 0;
    std::vector<Vec> basis;
    std::vector<ForcingCheck> checks;
    bool orthogonal = false;
    bool sums_to_one = false;
    bool all_outside_gamma = false;
    bool all_forced = false;
    bool verified() const { return orthogonal && sums_to_one && all_outside_gamma && all_forced; }
};
inline constexpr uint64_t kGammaSeed = 0xC0FFEE;
ObstructionWitness gamma_counterexample(int k, const Signature& tau, uint64_t seed = kGammaSeed);

// ---- winding number ----

struct Symbol {
    int min_degree = 0;
    std::vector<cplx> coeffs;  // coeffs[j] multiplies z^(min_degree + j)
};
inline constexpr int kWindingGrid = 1 << 16;
int winding_obstruction(const Symbol& s);

}  // namespace oplat

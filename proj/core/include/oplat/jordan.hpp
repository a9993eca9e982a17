#pragma once

#include "oplat/algebra.hpp"
#include "oplat/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oplat {

inline constexpr double kWitnessEps = 1e-6;

struct SquareResult {
    BasicElement value;
    bool exact = false;  // matrix kind: only an upper bound of the true basic square
};

SquareResult basic_square(const BasicElement& C);
SquareResult basic_sqrt(const BasicElement& C);

// (√C)² can be strictly below C: a convex combination of the roots whose square
// sits below s_ρ(C) at some pure state.
struct StrictnessWitness {
    Vec xi;
    std::vector<double> weights;
    double value = 0;  // ρ((Σ μ_i √c_i)²)
    double s_rho = 0;  // s_ρ(C)
};
std::optional<StrictnessWitness> sqrt_square_strictness(const BasicElement& C, uint64_t seed, int trials = 2000);

struct CertifiedInterval {
    double lower = 0;
    double upper = 0;
    double eps = 0;
    Element witness;
    double witness_margin = 0;  // least eigenvalue of witness - generator
    double width() const { return upper - lower; }
    double mid() const { return 0.5 * (lower + upper); }
};

// Bracket for r_ρ(C²), C >= 0 basic, matrix kind, ρ pure or an orthogonal mixture.
CertifiedInterval eval_square_interval(const BasicElement& C, const State& rho, double eps = kWitnessEps);

Interval sqrt_general_at(const LatticeElement& P, const State& rho);
double sqr_general_at(const LatticeElement& A, const State& rho);
double square_general_at(const LatticeElement& A, const State& rho);

struct Op13Result {
    CertifiedInterval interval;
    Element witness_d;
};
Op13Result op13_at(const BasicElement& C, const BasicElement& D, const State& rho, double eps = kWitnessEps);

// ⌊C, D⌋ is i/2 times a real quantity; lie14_at returns the interval for that
// imaginary coefficient.
Interval lie14_at(const BasicElement& C, const BasicElement& D, const State& rho, double eps = kWitnessEps);
struct ComplexInterval {
    Interval re;
    Interval im;
};
ComplexInterval product15_at(const BasicElement& C, const BasicElement& D, const State& rho,
                             double eps = kWitnessEps);
// ρ(i[d, c]) / 2 for single generators: the bracket before taking infima.
double generator_bracket(const Element& c, const Element& d, const State& rho);

enum class CloudType { first, second };
Interval quadratic_cloud_at(const BasicElement& C, const BasicElement& D, const BasicElement& E, const State& rho,
                            CloudType type, double eps = kWitnessEps);

struct SqrSingle {
    Element value;
    double gap = 0;        // ‖value - a₊²‖
    double gap_bound = 0;  // ‖a₋‖² / R_max
    int grid_points = 0;
};
SqrSingle sqr_single(const Element& a, double R_max = 1e6);

struct Lemma2Report {
    enum class Side { plus, minus };
    Side side = Side::plus;
    bool perturbed = false;
    Element witness;
    double rho_c2 = 0;
    double lambda = 0;
    double threshold = 0;
    double psd_margin = 0;
    double rho_a = 0;
    double t_plus = 0, t_minus = 0, tau = 0, a_plus = 0, a_minus = 0;
    bool ok = false;
    std::string side_name() const { return side == Side::plus ? "a+" : "a-"; }
};
Lemma2Report lemma2_state_check(const Element& a, const State& rho);

enum class Growth { constant, sqrt, identity };
const char* growth_name(Growth f);
struct GapPoint {
    double r;
    double gap;
};
std::vector<GapPoint> lemma5_asymptotics(const BasicElement& C, Growth f, const std::vector<double>& r_grid,
                                         const State& rho);
bool gap_trace_decreasing(const std::vector<GapPoint>& trace, double from_r);

// A positive linear map given on a finite spanning set of the domain, with a
// commutative codomain.
struct PositiveMap {
    Algebra domain;
    Algebra codomain;
    std::vector<Element> spanning;
    std::vector<Element> images;

    Element operator()(const Element& y) const;
    void verify_positive(uint64_t seed, int probes = 64) const;

    static PositiveMap identity(const Algebra& alg);
    static PositiveMap restriction(const Algebra& alg, const std::vector<int>& kept);
    static PositiveMap state(const Algebra& alg, const State& rho);
};

struct SchwarzReport {
    bool holds = false;
    double margin = 0;  // min over codomain points of φ(xx*) - φ(x₀)² - φ(x₁)²
};
SchwarzReport schwarz22_check(const PositiveMap& phi, const Element& x0, const Element& x1);

}  // namespace oplat

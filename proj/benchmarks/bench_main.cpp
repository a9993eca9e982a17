#include "oplat/instances.hpp"
#include "oplat/jordan.hpp"
#include "oplat/pmap.hpp"
#include "oplat/poset.hpp"
#include "oplat/projlattice.hpp"

#include <benchmark/benchmark.h>

using namespace oplat;

static void BM_WedgeExact(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    Rng rng(7);
    Algebra alg = Algebra::matrix(n);
    Projection p = Projection(Element(alg, random_projection_matrix(rng, n, n / 2)));
    Projection q = Projection(Element(alg, random_projection_matrix(rng, n, n / 2 + 1)));
    for (auto _ : st) benchmark::DoNotOptimize(wedge_exact(p, q));
}
BENCHMARK(BM_WedgeExact)->DenseRange(2, 8, 2);

static void BM_WedgeIterative(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    Rng rng(7);
    Algebra alg = Algebra::matrix(n);
    Projection p = Projection(Element(alg, random_projection_matrix(rng, n, n / 2)));
    Projection q = Projection(Element(alg, random_projection_matrix(rng, n, n / 2 + 1)));
    for (auto _ : st) benchmark::DoNotOptimize(wedge_iterative(p, q));
}
BENCHMARK(BM_WedgeIterative)->DenseRange(2, 8, 2);

// small angles stress the squaring phase
static void BM_WedgeAngle(benchmark::State& st) {
    const double theta = st.range(0) * 1e-3;
    auto [p, q] = angle_pair(Algebra::matrix(2), theta);
    for (auto _ : st) benchmark::DoNotOptimize(wedge_iterative(p, q));
}
BENCHMARK(BM_WedgeAngle)->Arg(10)->Arg(100)->Arg(785);

static void BM_Completion(benchmark::State& st) {
    Rng rng(11);
    FinitePoset S = random_poset(rng, static_cast<int>(st.range(0)), 0.3);
    for (auto _ : st) benchmark::DoNotOptimize(build_completion(S));
}
BENCHMARK(BM_Completion)->DenseRange(4, 12, 4);

static void BM_SquareInterval(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    Rng rng(3);
    Algebra alg = Algebra::matrix(n);
    BasicElement C = random_psd_basic(rng, alg, 3);
    State rho = random_pure_state(rng, alg);
    for (auto _ : st) benchmark::DoNotOptimize(eval_square_interval(C, rho, kWitnessEps));
}
BENCHMARK(BM_SquareInterval)->DenseRange(2, 6, 2);

static void BM_CoherentLift(benchmark::State& st) {
    QSpec q{3, {0, 1, 2, 0, 1, 2}};
    uint64_t s = 0;
    for (auto _ : st) benchmark::DoNotOptimize(coherent_lift(q, ++s));
}
BENCHMARK(BM_CoherentLift);

static void BM_Winding(benchmark::State& st) {
    Symbol z2{0, {0.5, 0.0, 1.0}};
    for (auto _ : st) benchmark::DoNotOptimize(winding_obstruction(z2));
}
BENCHMARK(BM_Winding);

BENCHMARK_MAIN();

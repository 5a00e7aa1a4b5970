// Compares the OpenMP kernels against their serial reference routes on the
// hot paths: the window average, one application of the fixed-point map,
// and one force evaluation sweep of the chain.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "frontforge/chain.hpp"
#include "frontforge/kernels.hpp"
#include "frontforge/potential.hpp"
#include "frontforge/profile.hpp"
#include "frontforge/psystem.hpp"
#include "frontforge/solver.hpp"

using namespace frontforge;

namespace {

std::vector<double> monotone_values(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (double& x : v) {
        acc += dist(rng);
        x = acc;
    }
    for (double& x : v) x = -1.0 + 2.0 * x / acc;
    return v;
}

void BM_average_parallel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = 10;
    const std::vector<double> u = monotone_values(n, 1);
    std::vector<double> out(u.size());
    for (auto _ : state) {
        kernels::average(u, -1.0, 1.0, k, 0.05, out);
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
}

void BM_average_reference(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = 10;
    const std::vector<double> u = monotone_values(n, 1);
    std::vector<double> out(u.size());
    for (auto _ : state) {
        kernels::average_reference(u, -1.0, 1.0, k, 0.05, out);
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
}

void BM_apply_map(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const NormalizedPotential np = builtin("cubic_force", std::vector<double>{0.4});
    const Grid g = Grid::make(0.05, m);
    Profile w = shock_profile(g);
    for (auto _ : state) {
        Profile t = apply_T(np, w);
        benchmark::DoNotOptimize(t.values.data());
        benchmark::ClobberMemory();
    }
}

void BM_chain_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PotentialSpec spec = builtin_spec("cubic_force", std::vector<double>{0.4});
    const ShockData s = complete_shock(spec, -1.0, 1.0, 1.0, 2);
    ChainState st = init_riemann(s, n, 20.0);
    for (auto _ : state) {
        step(st, spec, 1e-6, 1);  // tiny step: isolates the force sweep
        benchmark::DoNotOptimize(st.velocities.data());
        benchmark::ClobberMemory();
    }
}

}  // namespace

BENCHMARK(BM_average_parallel)->Arg(1601)->Arg(12001)->Arg(100001);
BENCHMARK(BM_average_reference)->Arg(1601)->Arg(12001)->Arg(100001);
BENCHMARK(BM_apply_map)->Arg(40)->Arg(150);
BENCHMARK(BM_chain_step)->Arg(2000)->Arg(20000);

BENCHMARK_MAIN();

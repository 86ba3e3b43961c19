#include <benchmark/benchmark.h>

#include <numbers>

#include "ptdeph/continuum.hpp"
#include "ptdeph/dephasing.hpp"
#include "ptdeph/entanglement.hpp"
#include "ptdeph/oracle.hpp"

using namespace ptdeph;

static void BM_GammaContinuum(benchmark::State& state) {
    const OhmicSpectrum s{1.0, 0.1, std::numbers::pi / 2, 300.0, 2.0};
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gamma_continuum_nh(s, t));
}
BENCHMARK(BM_GammaContinuum)->Arg(2)->Arg(20)->Arg(120)->Unit(benchmark::kMillisecond);

static void BM_GammaDiscrete(benchmark::State& state) {
    DiscreteBath bath{{}, 1.0, 0.5};
    for (int k = 0; k < state.range(0); ++k) bath.modes.push_back({0.01 * (k + 1), Coupling(0.1, 0.3 * k)});
    for (auto _ : state) benchmark::DoNotOptimize(gamma_discrete(bath, 7.5));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GammaDiscrete)->Arg(10)->Arg(1000);

static void BM_Concurrence(benchmark::State& state) {
    const auto rho = dephased_bell(0.4);
    for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho).concurrence);
}
BENCHMARK(BM_Concurrence);

static void BM_OracleRatios(benchmark::State& state) {
    const std::vector<OracleMode> modes{{{1.0, 0.2, static_cast<int>(state.range(0))}, Coupling(0.1, 0.7)}};
    const std::vector<double> times{1.0, 5.0, 10.0, 20.0};
    for (auto _ : state) benchmark::DoNotOptimize(coherence_ratios(modes, 1.0, times));
}
BENCHMARK(BM_OracleRatios)->Arg(24)->Arg(96)->Unit(benchmark::kMillisecond);

static void BM_SimilarityResidual(benchmark::State& state) {
    const TruncatedMode m{1.0, 0.3, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(similarity_residual(m, 20));
}
BENCHMARK(BM_SimilarityResidual)->Arg(80)->Unit(benchmark::kMillisecond)->Iterations(2);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "kent/codes.hpp"
#include "kent/cover.hpp"
#include "kent/experiments.hpp"
#include "kent/lower_bound.hpp"
#include "kent/solver.hpp"

using namespace kent;

namespace {

FluxModel flux_for(int index) {
  switch (index) {
    case 0: return FluxModel::burgers();
    case 1: return FluxModel::monomial(2);
    case 2: return FluxModel::monomial(3);
    default: return FluxModel::mixed_quartic();
  }
}

void BM_Riemann(benchmark::State& state) {
  const FluxModel flux = flux_for(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(riemann(flux, u(rng), u(rng), 1e-3));
}
BENCHMARK(BM_Riemann)->DenseRange(0, 3);

void BM_Evolve(benchmark::State& state) {
  const FluxModel flux = flux_for(static_cast<int>(state.range(0)));
  const auto u0 = sample_initial_data(1.0, 1.0, static_cast<int>(state.range(1)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(evolve(flux, u0, 1.0, {1e-3}));
}
BENCHMARK(BM_Evolve)->ArgsProduct({{0, 1}, {8, 64}})->Unit(benchmark::kMillisecond);

void BM_CoverSolutionSet(benchmark::State& state) {
  const FluxModel flux = flux_for(static_cast<int>(state.range(0)));
  std::vector<PiecewiseConstantFn> samples;
  for (int i = 0; i < 20; ++i) samples.push_back(evolve(flux, sample_initial_data(1.0, 1.0, 8, 100 + i), 1.0, {1e-3}));
  FluxConstants constants = estimate_constants(flux);
  constants.C1 = calibrate_C1(flux, 1.0, 1.0, samples);
  for (auto _ : state) benchmark::DoNotOptimize(cover_solution_set_report(flux, 1.0, 1.0, 0.05, samples, constants));
}
BENCHMARK(BM_CoverSolutionSet)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BuildWitnessFamily(benchmark::State& state) {
  const FluxModel flux = flux_for(static_cast<int>(state.range(0)));
  const double eps = state.range(0) == 0 ? 1.0 / 192 : 1.0 / 48;
  for (auto _ : state) benchmark::DoNotOptimize(build_witness_family(flux, 8.0, 1.0, eps));
}
BENCHMARK(BM_BuildWitnessFamily)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BackwardRoundTrip(benchmark::State& state) {
  const FluxModel flux = FluxModel::burgers();
  const WitnessFamily family = build_witness_family(flux, 8.0, 1.0, 1.0 / 96);
  const auto v = family.member(12345);
  const auto& s = family.spec();
  for (auto _ : state) {
    const auto u0 = backward_construct(flux, v, s.cls, s.T, s.delta, s.delta);
    benchmark::DoNotOptimize(evolve(flux, u0, s.T, {s.delta}));
  }
}
BENCHMARK(BM_BackwardRoundTrip)->Unit(benchmark::kMillisecond);

void BM_BestCode(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(best_code_log2(static_cast<int>(state.range(0)), 20));
}
BENCHMARK(BM_BestCode)->Arg(200)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();

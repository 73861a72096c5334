#include <benchmark/benchmark.h>

#include "qmotion/amplitude.hpp"
#include "qmotion/nonmarkov.hpp"
#include "qmotion/oracles.hpp"
#include "qmotion/params.hpp"

namespace {

using namespace qmotion;

CavityQubitParams narrow_band() {
  CavityQubitParams p;
  p.gamma = 1.0;
  p.lambda_width = 0.01;
  p.delta = 0.0;
  p.omega0 = 4.595e7;
  p.beta = 1.0e-9;
  return p;
}

void BM_SolveCubic(benchmark::State& state) {
  const DimensionlessParams dp = to_dimensionless(narrow_band());
  for (auto _ : state) {
    benchmark::DoNotOptimize(AmplitudeSolution(dp));
  }
}
BENCHMARK(BM_SolveCubic);

void BM_AmplitudeEval(benchmark::State& state) {
  const AmplitudeSolution sol(to_dimensionless(narrow_band()));
  double gt = 0.0;
  for (auto _ : state) {
    gt += 1e-3;
    benchmark::DoNotOptimize(sol.amplitude(gt));
  }
}
BENCHMARK(BM_AmplitudeEval);

void BM_MemoryKernel(benchmark::State& state) {
  const DimensionlessParams dp = to_dimensionless(narrow_band());
  double s = 0.0;
  for (auto _ : state) {
    s += 1e-3;
    benchmark::DoNotOptimize(memory_kernel(dp, s));
  }
}
BENCHMARK(BM_MemoryKernel);

void BM_VolterraSolve(benchmark::State& state) {
  const DimensionlessParams dp = to_dimensionless(narrow_band());
  VolterraConfig cfg;
  cfg.t_max = 10.0;
  cfg.dt = 1e-2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(volterra_solve(dp, cfg));
  }
}
BENCHMARK(BM_VolterraSolve);

void BM_BlpMeasure(benchmark::State& state) {
  const AmplitudeSolution sol(to_dimensionless(narrow_band()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(blp_measure(sol, StatePair{0.0}, 200.0));
  }
}
BENCHMARK(BM_BlpMeasure);

void BM_MaximizeOverPairs(benchmark::State& state) {
  const AmplitudeSolution sol(to_dimensionless(narrow_band()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximize_over_pairs(sol, 200.0));
  }
}
BENCHMARK(BM_MaximizeOverPairs);

}  // namespace

BENCHMARK_MAIN();

// Serial reference vs OpenMP kernels. Arg 0 selects Execution::serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "spectral_glue/random.hpp"
#include "spectral_glue/spectral_pair.hpp"
#include "spectral_glue/spectrum.hpp"
#include "spectral_glue/suites.hpp"

using namespace spectral_glue;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_FindSpectrum(benchmark::State& state) {
  Rng rng(1);
  const IntervalUnion omega = random_bounded_omega(5, rng);
  const BoundaryMatrix b = BoundaryMatrix::for_domain(omega, random_unitary(5, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_spectrum(omega, b, -20.0, 20.0, {1e-12, mode(state)}));
  }
}

void BM_Orthogonality(benchmark::State& state) {
  const IntervalUnion omega({{0.0, 1.0}, {1.7, 2.2}, {3.0, 3.4}});
  std::vector<double> lambdas;
  for (int k = -400; k <= 400; ++k) lambdas.push_back(0.37 * k);
  for (auto _ : state) benchmark::DoNotOptimize(orthogonality_test(omega, lambdas, 1e-9, mode(state)));
}

void BM_Completeness(benchmark::State& state) {
  const IntervalUnion omega({{0.0, 1.0}, {3.0, 4.0}});
  std::vector<double> lambdas;
  for (int k = -80; k <= 80; ++k) lambdas.push_back(0.5 * k);
  for (auto _ : state) benchmark::DoNotOptimize(completeness_estimate(omega, lambdas, 64, 7, mode(state)));
}

void BM_UnitaritySuite(benchmark::State& state) {
  SuiteOptions options;
  options.trials = 20;
  options.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_suite("unitarity", options));
}

}  // namespace

BENCHMARK(BM_FindSpectrum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Orthogonality)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Completeness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UnitaritySuite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

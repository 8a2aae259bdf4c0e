#include <benchmark/benchmark.h>

#include <omp.h>

#include "sqzlink/montecarlo.hpp"

using namespace sqzlink;

namespace {

CovMat2 paper_state() {
  return output_state({{1e4}, {0.576, SqueezeConvention::paper}, 4.539992976248485e-5});
}

void BM_EstimateTrialsSerial(benchmark::State& state) {
  const CovMat2 v = paper_state();
  const TrialBatch batch{1, 0, static_cast<std::size_t>(state.range(0)), 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::estimate_trials(v, MeasurementModel::joint_phase_space, batch));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EstimateTrialsOpenMP(benchmark::State& state) {
  const CovMat2 v = paper_state();
  const TrialBatch batch{1, 0, static_cast<std::size_t>(state.range(0)), 2};
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_trials(v, MeasurementModel::joint_phase_space, batch));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SampleQuadratures(benchmark::State& state) {
  const CovMat2 v = paper_state();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_quadratures(v, {1, 0}, static_cast<std::size_t>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_EstimateTrialsSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateTrialsOpenMP)
    ->ArgsProduct({{100000}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_SampleQuadratures)->Arg(1000000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

// Serial reference vs OpenMP path for each parallel kernel. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include "agenda/analysis.hpp"
#include "agenda/benchmarks.hpp"
#include "agenda/game_engine.hpp"
#include "agenda/screening.hpp"
#include "agenda/verification.hpp"

using namespace agenda;

namespace {

ModelParams precise() {
  auto P = canonical_params();
  P.discount = 0.999;
  P.precisions.assign(3, 0.999);
  return P;
}

void BM_Simulate(benchmark::State& st) {
  const auto P = precise();
  const auto prof = build_screening_profile(P, screening_sequence(P, 0, 0.5));
  SimulationOptions so;
  so.episodes = 20000;
  so.parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(simulate(P, prof, so).proposer_mean);
}

void BM_TioliGrid(benchmark::State& st) {
  const auto P = precise();
  TioliOptions o;
  o.parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(tioli_value(P, 0.5, o).value);
}

void BM_PoissonTrials(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(pb_exactness_trials(1, 10, 200, st.range(0) != 0).max_error);
}

void BM_RankingTrials(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(ranking_trials(1, 2000, 10, st.range(0) != 0).failures);
}

void BM_RegionSweep(benchmark::State& st) {
  const auto P = canonical_params();
  for (auto _ : st)
    benchmark::DoNotOptimize(region_sweep(P, 0, 1.0, 6.0, 501, 501, st.range(0) != 0).size());
}

}  // namespace

BENCHMARK(BM_Simulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TioliGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PoissonTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RankingTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RegionSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

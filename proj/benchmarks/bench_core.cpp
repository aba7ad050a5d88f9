#include <benchmark/benchmark.h>

#include "nonresp/montecarlo.hpp"
#include "nonresp/scenario.hpp"
#include "nonresp/theory.hpp"

namespace {

using namespace nonresp;

FinitePopulation bench_population(std::size_t N) {
  PopulationParams t;
  t.N = N;
  t.Ybar = 100.0;
  t.Xbar = 40.0;
  t.S2_Y = 400.0;
  t.S2_X = 64.0;
  t.rho = 0.7;
  t.W2 = 0.2;
  t.S2_Y2 = 300.0;
  return synthesize_population(t, 1);
}

void BM_draw_srswor(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  Rng rng(7);
  for (auto _ : state)
    benchmark::DoNotOptimize(draw_srswor(N, N / 4, rng));
}
BENCHMARK(BM_draw_srswor)->Arg(200)->Arg(2000)->Arg(20000);

void BM_realize_two_phase(benchmark::State& state) {
  const auto pop = bench_population(static_cast<std::size_t>(state.range(0)));
  Design d{TwoPhase{pop.size() / 2, pop.size() / 5}, 1.5};
  std::uint64_t rep = 0;
  for (auto _ : state) {
    Rng rng = Rng::child(3, rep++);
    benchmark::DoNotOptimize(realize(d, pop, rng));
  }
}
BENCHMARK(BM_realize_two_phase)->Arg(200)->Arg(2000);

void BM_estimator_suite(benchmark::State& state) {
  const auto pop = bench_population(400);
  const auto p = compute_params(pop);
  Design d{TwoPhase{200, 80}, 1.5};
  Rng rng(5);
  const auto s = realize(d, pop, rng);
  const ClassParams cp{0.9, 1.5, 1.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(hh_mean(s));
    benchmark::DoNotOptimize(ratio_estimate_2p(s));
    benchmark::DoNotOptimize(regression_estimate_2p(s));
    benchmark::DoNotOptimize(class_estimate_2p(s, cp));
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_estimator_suite);

void BM_theory_table(benchmark::State& state) {
  const auto spec = preset("table2");
  for (auto _ : state) benchmark::DoNotOptimize(compute_pre_table(spec));
}
BENCHMARK(BM_theory_table);

void BM_run_simulation(benchmark::State& state) {
  const auto pop = bench_population(200);
  Design d{SinglePhase{50}, 1.5};
  const std::vector<EstimatorKind> kinds = {
      EstimatorKind::HHMean, EstimatorKind::Ratio, EstimatorKind::Regression,
      EstimatorKind::ClassEstimator};
  const auto R = static_cast<std::size_t>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(run_simulation(pop, d, kinds, {}, R, 11, threads));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(R));
}
BENCHMARK(BM_run_simulation)
    ->Args({1000, 1})
    ->Args({10000, 1})
    ->Args({10000, 4});

}  // namespace

BENCHMARK_MAIN();

// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "destwalk/analysis.hpp"
#include "destwalk/frame.hpp"
#include "destwalk/simulate.hpp"

namespace {

using namespace destwalk;

void WalkSteps(benchmark::State& state) {
  WalkConfig config;
  config.step.gamma = static_cast<double>(state.range(0)) / 10.0;
  config.steps = 20000;
  config.burn_in = 0;
  config.master_seed = 12345;
  for (auto _ : state) {
    const Trajectory traj = run_walk(config);
    benchmark::DoNotOptimize(traj.records.data());
  }
  state.SetItemsProcessed(state.iterations() * config.steps);
}
BENCHMARK(WalkSteps)->Arg(-10)->Arg(0)->Arg(10)->Unit(benchmark::kMillisecond);

void RandomFrame(benchmark::State& state) {
  Rng rng(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const Frame f = random_frame(n, rng);
    benchmark::DoNotOptimize(f.column(0).data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(RandomFrame)->Arg(2)->Arg(3)->Arg(8)->Arg(16);

void RankAndFit(benchmark::State& state) {
  Rng rng(11);
  std::vector<double> lengths(static_cast<std::size_t>(state.range(0)));
  for (auto& l : lengths) {
    l = 1e-3 / (1.0 - rng.uniform01());  // inverse-square tail
  }
  for (auto _ : state) {
    const TailFit fit = fit_tail(lengths, 0.01, 10.0);
    benchmark::DoNotOptimize(fit.slope);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(RankAndFit)->Range(1 << 14, 1 << 20)->Unit(benchmark::kMillisecond);

void ReplicaEnsemble(benchmark::State& state) {
  WalkConfig config;
  config.steps = 5000;
  config.burn_in = 1000;
  config.master_seed = 31;
  AggregateOptions options;
  options.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    const ReplicaAggregate agg = run_replicas(config, 8, options);
    benchmark::DoNotOptimize(agg.lengths.data());
  }
  state.SetItemsProcessed(state.iterations() * 8 * config.steps);
}
BENCHMARK(ReplicaEnsemble)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

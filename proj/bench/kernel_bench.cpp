// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "submax/baselines.hpp"
#include "submax/ingest.hpp"
#include "submax/multilinear.hpp"
#include "submax/optimizer.hpp"

namespace submax {
namespace {

Execution ModeOf(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

const CoverageObjective& LargeInstance() {
  static const CoverageObjective objective = [] {
    SynthOptions options;
    options.reroll_on_ties = false;
    return SynthInstance(10, 1000, 12000, 0.02, 3, options);
  }();
  return objective;
}

const CoverageObjective& SmallInstance() {
  static const CoverageObjective objective = [] {
    SynthOptions options;
    options.reroll_on_ties = false;
    return SynthInstance(6, 8, 300, 0.1, 5, options);
  }();
  return objective;
}

void BM_JacobiStep(benchmark::State& state) {
  const auto& oracle = LargeInstance();
  const int agents = oracle.num_agents();
  const int m = 3;
  const auto p = ProbabilityProfile::Uniform(agents, oracle.num_strategies());
  std::vector<int> contexts(static_cast<std::size_t>(m) * agents);
  std::vector<int> batch(m);
  for (int j = 0; j < agents; ++j) {
    DrawBatch(p.row(j), oracle.num_strategies(), 1, j, 0, batch);
    for (int s = 0; s < m; ++s) contexts[s * agents + j] = batch[s];
  }
  const std::vector<std::span<const int>> per_agent(agents, contexts);
  ProbabilityProfile next = p;
  std::vector<double> displacement(agents);
  for (auto _ : state) {
    JacobiStep(oracle, p, per_agent, m, 1e-3, ModeOf(state), {}, next,
               displacement);
    benchmark::DoNotOptimize(displacement.data());
  }
}
BENCHMARK(BM_JacobiStep)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_RunAlgorithm1(benchmark::State& state) {
  const auto& oracle = LargeInstance();
  RunConfig config;
  config.gamma = 1e-3;
  config.max_iters = 50;
  config.stop_on_equilibrium = false;
  config.execution = ModeOf(state);
  const auto p0 =
      ProbabilityProfile::Uniform(oracle.num_agents(), oracle.num_strategies());
  for (auto _ : state) {
    auto result = RunAlgorithm1(oracle, p0, config);
    benchmark::DoNotOptimize(result.trace.jk.back());
  }
}
BENCHMARK(BM_RunAlgorithm1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const auto& oracle = SmallInstance();
  for (auto _ : state) {
    auto best = BruteForce(oracle, kDefaultEnumerationLimit, ModeOf(state));
    benchmark::DoNotOptimize(best.value);
  }
}
BENCHMARK(BM_BruteForce)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EnumerateEquilibria(benchmark::State& state) {
  const auto& oracle = SmallInstance();
  for (auto _ : state) {
    auto list = EnumerateEquilibria(oracle, 1e-12, 100'000'000, ModeOf(state));
    benchmark::DoNotOptimize(list.size());
  }
}
BENCHMARK(BM_EnumerateEquilibria)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace submax

BENCHMARK_MAIN();

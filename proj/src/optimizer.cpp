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

#include "submax/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "submax/errors.hpp"
#include "submax/rng.hpp"
#include "submax/simplex.hpp"

namespace submax {

namespace {

constexpr std::uint64_t kBatchStream = 0xBA7C;

void CheckProfile(const ObjectiveOracle& oracle,
                  const StrategyProfile& profile) {
  if (profile.size() != oracle.num_agents())
    throw InvalidArgument("profile length does not match the agent count");
  for (int i = 0; i < profile.size(); ++i) {
    if (profile[i] != kEmpty &&
        (profile[i] < 0 || profile[i] >= oracle.num_strategies()))
      throw InvalidArgument("strategy index out of range");
  }
}

// Runs `visit(agent, values, current)` where values has K+1 entries.
template <typename Visit>
void ForEachAgentValues(const ObjectiveOracle& oracle,
                        const StrategyProfile& profile, Visit visit) {
  const int k = oracle.num_strategies();
  std::vector<double> values(k + 1);
  for (int i = 0; i < profile.size(); ++i) {
    oracle.ValuesForAgent(profile.choices(), i, values);
    const int column = profile[i] == kEmpty ? k : profile[i];
    if (!visit(i, std::span<const double>(values), values[column])) return;
  }
}

}  // namespace

void RunConfig::Validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw InvalidArgument("gamma must be a positive finite number");
  if (sample_size < 1) throw InvalidArgument("M must be >= 1");
  if (max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
  if (check_every < 1) throw InvalidArgument("check_every must be >= 1");
  if (!(eps_vertex >= 0.0) || eps_vertex >= 0.5)
    throw InvalidArgument("eps_vertex must be in [0, 0.5)");
  if (!(eps_eq >= 0.0)) throw InvalidArgument("eps_eq must be >= 0");
}

bool IsEquilibriumProfile(const ObjectiveOracle& oracle,
                          const StrategyProfile& profile, double eps_eq,
                          bool include_empty) {
  return !FindImprovement(oracle, profile, eps_eq, include_empty).has_value();
}

std::optional<Improvement> FindImprovement(const ObjectiveOracle& oracle,
                                           const StrategyProfile& profile,
                                           double eps_eq, bool include_empty) {
  CheckProfile(oracle, profile);
  const int k = oracle.num_strategies();
  const int columns = include_empty ? k + 1 : k;
  std::optional<Improvement> found;
  ForEachAgentValues(oracle, profile, [&](int agent, auto values,
                                          double current) {
    int best = -1;
    for (int a = 0; a < columns; ++a) {
      if (values[a] > current + eps_eq &&
          (best < 0 || values[a] > values[best]))
        best = a;
    }
    if (best < 0) return true;
    found = Improvement{agent, ChoiceForColumn(best, k),
                        values[best] - current};
    return false;
  });
  return found;
}

std::optional<StrategyProfile> RoundToVertices(const ProbabilityProfile& p,
                                               int num_strategies,
                                               double eps_vertex) {
  StrategyProfile rounded(std::vector<int>(p.num_agents(), kEmpty));
  for (int i = 0; i < p.num_agents(); ++i) {
    const auto column = VertexIndex(p.row(i), eps_vertex);
    if (!column) return std::nullopt;
    rounded[i] = ChoiceForColumn(*column, num_strategies);
  }
  return rounded;
}

std::optional<StrategyProfile> DetectEquilibrium(const ProbabilityProfile& p,
                                                 const ObjectiveOracle& oracle,
                                                 double eps_vertex,
                                                 double eps_eq) {
  auto rounded = RoundToVertices(p, oracle.num_strategies(), eps_vertex);
  if (!rounded) return std::nullopt;
  const bool with_empty = p.width() > oracle.num_strategies();
  if (!IsEquilibriumProfile(oracle, *rounded, eps_eq, with_empty))
    return std::nullopt;
  return rounded;
}

std::vector<double> ComputeJk(std::span<const double> sum_sq) {
  if (sum_sq.empty()) throw InvalidArgument("J^k needs at least one step");
  std::vector<double> jk(sum_sq.size());
  double total = 0.0;
  for (std::size_t t = 0; t < sum_sq.size(); ++t) {
    total += sum_sq[t];
    jk[t] = total / static_cast<double>(t + 1);
  }
  return jk;
}

double DefaultStepSize(const ObjectiveOracle& oracle, std::uint64_t seed,
                       int samples, bool include_empty) {
  const auto estimate =
      DeltaMaxSampled(oracle, samples, seed, DeltaMaxOptions{include_empty});
  if (estimate.degenerate()) return 0.0005;
  return 1.0 / estimate.value;
}

void DrawBatch(std::span<const double> row, int num_strategies,
               std::uint64_t seed, int agent, int iteration,
               std::span<int> out) {
  StreamRng rng(seed, static_cast<std::uint64_t>(agent),
                static_cast<std::uint64_t>(iteration), kBatchStream);
  for (int& choice : out)
    choice = ChoiceForColumn(SampleStrategy(row, rng), num_strategies);
}

void JacobiStep(const ObjectiveOracle& oracle, const ProbabilityProfile& p,
                const std::vector<std::span<const int>>& contexts,
                int sample_size, double gamma, Execution execution,
                std::span<const int> order, ProbabilityProfile& next,
                std::span<double> displacement) {
  const int agents = p.num_agents();
  const int width = p.width();
  if (static_cast<int>(contexts.size()) != agents ||
      static_cast<int>(displacement.size()) != agents)
    throw InvalidArgument("one context block and displacement per agent");
  if (!order.empty() && static_cast<int>(order.size()) != agents)
    throw InvalidArgument("agent order must list every agent");
  if (next.num_agents() != agents || next.width() != width)
    next = ProbabilityProfile(agents, width);

#pragma omp parallel if (execution == Execution::kParallel)
  {
    std::vector<double> grad(width), values(width), moved(width), scratch;
#pragma omp for schedule(static)
    for (int n = 0; n < agents; ++n) {
      const int i = order.empty() ? n : order[n];
      SampledGradientFromContexts(oracle, i, contexts[i], sample_size, grad,
                                  values);
      const auto row = p.row(i);
      for (int a = 0; a < width; ++a) moved[a] = row[a] + gamma * grad[a];
      const auto out = next.row(i);
      ProjectInto(moved, out, scratch);
      double sq = 0.0;
      for (int a = 0; a < width; ++a) {
        const double d = out[a] - row[a];
        sq += d * d;
      }
      displacement[i] = sq;
    }
  }
}

void AppendIteration(IterationTrace& trace, std::span<const double> agent_sq,
                     double f_sample, bool flag) {
  const double sum = std::accumulate(agent_sq.begin(), agent_sq.end(), 0.0);
  const std::size_t k = trace.jk.size();
  trace.cumulative_sq += sum;
  trace.sum_sq_displacement.push_back(sum);
  trace.agent_displacement.emplace_back(agent_sq.begin(), agent_sq.end());
  trace.jk.push_back(trace.cumulative_sq / static_cast<double>(k + 1));
  trace.f_sample.push_back(f_sample);
  trace.equilibrium_flag.push_back(flag ? 1 : 0);
}

RunResult RunAlgorithm1(const ObjectiveOracle& oracle,
                        const ProbabilityProfile& p0, const RunConfig& config) {
  config.Validate();
  const int agents = oracle.num_agents();
  const int k_strategies = oracle.num_strategies();
  if (p0.num_agents() != agents ||
      (p0.width() != k_strategies && p0.width() != k_strategies + 1))
    throw InvalidArgument("initial profile shape does not match the instance");
  p0.Validate();
  if (!config.allow_vertex_start &&
      RoundToVertices(p0, k_strategies, config.eps_vertex))
    throw InvalidArgument("initial profile must not be all vertices");

  RunResult result;
  if (config.delta_max && *config.delta_max > 0.0 &&
      config.gamma >= 2.0 / *config.delta_max) {
    result.warnings.push_back(fmt::format(
        "gamma {} is not below 2/delta_max = {}", config.gamma,
        2.0 / *config.delta_max));
  }

  const int m = config.sample_size;
  ProbabilityProfile p = p0;
  ProbabilityProfile next = p0;
  std::vector<int> contexts(static_cast<std::size_t>(m) * agents);
  std::vector<int> batch(m);
  const std::vector<std::span<const int>> per_agent(agents, contexts);
  std::vector<double> displacement(agents);
  if (config.record_trace) result.trace.profiles.push_back(p);

  std::optional<StrategyProfile> cached_profile;
  std::optional<StrategyProfile> detected;
  int run_start = -1;
  for (int k = 0; k < config.max_iters; ++k) {
    for (int j = 0; j < agents; ++j) {
      DrawBatch(p.row(j), k_strategies, config.seed, j, k, batch);
      for (int s = 0; s < m; ++s) contexts[s * agents + j] = batch[s];
    }
    double f_sample = 0.0;
    for (int s = 0; s < m; ++s)
      f_sample += oracle.Value(std::span<const int>(contexts).subspan(
          static_cast<std::size_t>(s) * agents, agents));
    f_sample /= m;

    JacobiStep(oracle, p, per_agent, m, config.gamma, config.execution, {},
               next, displacement);
    std::swap(p, next);

    const auto rounded = RoundToVertices(p, k_strategies, config.eps_vertex);
    if (rounded != cached_profile) {
      cached_profile = rounded;
      detected.reset();
      if (rounded && IsEquilibriumProfile(oracle, *rounded, config.eps_eq,
                                          p.width() > k_strategies))
        detected = rounded;
    }
    const bool flag = detected.has_value();
    run_start = flag ? (run_start < 0 ? k + 1 : run_start) : -1;
    AppendIteration(result.trace, displacement, f_sample, flag);
    if (config.record_trace) result.trace.profiles.push_back(p);
    if (flag && config.stop_on_equilibrium &&
        (k + 1) % config.check_every == 0)
      break;
  }
  result.final_profile = std::move(p);
  result.equilibrium = detected;
  result.equilibrium_iteration = run_start;
  return result;
}

void WriteTraceCsv(std::ostream& out, const IterationTrace& trace) {
  out << "iter,J_k,sum_sq_displacement,f_sample,equilibrium_flag\n";
  for (int k = 0; k < trace.iterations(); ++k) {
    fmt::print(out, "{},{:.17g},{:.17g},{:.17g},{}\n", k + 1, trace.jk[k],
               trace.sum_sq_displacement[k], trace.f_sample[k],
               static_cast<int>(trace.equilibrium_flag[k]));
  }
}

void WriteProbabilityCsv(std::ostream& out, const IterationTrace& trace,
                         int num_strategies) {
  out << "iter,agent,strategy,probability\n";
  for (std::size_t t = 0; t < trace.profiles.size(); ++t) {
    const auto& p = trace.profiles[t];
    for (int i = 0; i < p.num_agents(); ++i) {
      const auto row = p.row(i);
      for (int a = 0; a < p.width(); ++a) {
        if (a < num_strategies) {
          fmt::print(out, "{},{},{},{:.17g}\n", t, i, a, row[a]);
        } else {
          fmt::print(out, "{},{},empty,{:.17g}\n", t, i, row[a]);
        }
      }
    }
  }
}

}  // namespace submax

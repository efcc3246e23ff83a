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

#ifndef SUBMAX_OPTIMIZER_HPP_
#define SUBMAX_OPTIMIZER_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "submax/multilinear.hpp"
#include "submax/objective.hpp"
#include "submax/strategy.hpp"

namespace submax {

// kParallel spreads per-agent (or per-profile, per-trial) work over OpenMP
// threads. Both produce bit-identical results.
enum class Execution { kSerial, kParallel };

struct RunConfig {
  double gamma = 0.0005;
  int sample_size = 3;  // M
  int max_iters = 5000;
  std::uint64_t seed = 0;
  double eps_vertex = 1e-9;
  double eps_eq = 1e-12;
  bool stop_on_equilibrium = true;
  int check_every = 10;
  bool record_trace = false;
  // Vertex initial profiles are rejected unless this is set.
  bool allow_vertex_start = false;
  Execution execution = Execution::kParallel;
  // When known, a warning is recorded if gamma >= 2 / delta_max.
  std::optional<double> delta_max;

  // Throws InvalidArgument.
  void Validate() const;
};

// Per iteration k = 1..n (index k-1).
struct IterationTrace {
  std::vector<double> sum_sq_displacement;
  std::vector<std::vector<double>> agent_displacement;  // ||p_i^k - p_i^{k-1}||^2
  std::vector<double> jk;
  // Mean of F over the M sampled profiles drawn at the start of the step.
  std::vector<double> f_sample;
  std::vector<std::uint8_t> equilibrium_flag;
  // P^0..P^n, record_trace only.
  std::vector<ProbabilityProfile> profiles;
  double cumulative_sq = 0.0;

  int iterations() const { return static_cast<int>(jk.size()); }
};

struct RunResult {
  IterationTrace trace;
  ProbabilityProfile final_profile;
  std::optional<StrategyProfile> equilibrium;
  // First iteration of the trailing run of flagged iterations, or -1.
  int equilibrium_iteration = -1;
  std::vector<std::string> warnings;
};

// Weak best-response test: F(A) >= F(a; A_{-i}) - eps_eq for every agent i
// and strategy a. With include_empty, abstaining counts as a strategy.
bool IsEquilibriumProfile(const ObjectiveOracle& oracle,
                          const StrategyProfile& profile, double eps_eq = 1e-12,
                          bool include_empty = false);

struct Improvement {
  int agent = -1;
  int strategy = -1;
  double gain = 0.0;
};

// The first (agent, strategy) pair, in index order, whose switch raises F by
// more than eps_eq; the best strategy for that agent is reported.
std::optional<Improvement> FindImprovement(const ObjectiveOracle& oracle,
                                           const StrategyProfile& profile,
                                           double eps_eq = 1e-12,
                                           bool include_empty = false);

// Rows all within eps_vertex of a vertex: round and return the profile if it
// is an equilibrium.
std::optional<StrategyProfile> DetectEquilibrium(const ProbabilityProfile& p,
                                                 const ObjectiveOracle& oracle,
                                                 double eps_vertex = 1e-9,
                                                 double eps_eq = 1e-12);

// Rounds every row to its vertex, or nullopt if some row is not a vertex.
std::optional<StrategyProfile> RoundToVertices(const ProbabilityProfile& p,
                                               int num_strategies,
                                               double eps_vertex = 1e-9);

// J^k = (1/k) sum_{t<=k} sum_sq[t-1]. Throws InvalidArgument when empty.
std::vector<double> ComputeJk(std::span<const double> sum_sq);

// 1 / (sampled delta_max), or 0.0005 when the sample sees no gap.
double DefaultStepSize(const ObjectiveOracle& oracle, std::uint64_t seed,
                       int samples = 1000, bool include_empty = true);

// Draws M columns of `row` for agent j at iteration k, mapped to choices.
void DrawBatch(std::span<const double> row, int num_strategies,
               std::uint64_t seed, int agent, int iteration,
               std::span<int> out);

// One projected stochastic gradient step for every agent, all reading `p`.
// contexts[i] holds agent i's M context profiles (M x I, row-major).
// Agents are processed in `order` (identity when empty); the result does not
// depend on it. Writes per-agent squared displacements.
void JacobiStep(const ObjectiveOracle& oracle, const ProbabilityProfile& p,
                const std::vector<std::span<const int>>& contexts,
                int sample_size, double gamma, Execution execution,
                std::span<const int> order, ProbabilityProfile& next,
                std::span<double> displacement);

RunResult RunAlgorithm1(const ObjectiveOracle& oracle,
                        const ProbabilityProfile& p0, const RunConfig& config);

// Shared bookkeeping for both algorithms.
void AppendIteration(IterationTrace& trace, std::span<const double> agent_sq,
                     double f_sample, bool flag);

// iter,J_k,sum_sq_displacement,f_sample,equilibrium_flag
void WriteTraceCsv(std::ostream& out, const IterationTrace& trace);
// iter,agent,strategy,probability for every recorded profile; the abstain
// column is labelled "empty".
void WriteProbabilityCsv(std::ostream& out, const IterationTrace& trace,
                         int num_strategies);

}  // namespace submax

#endif  // SUBMAX_OPTIMIZER_HPP_

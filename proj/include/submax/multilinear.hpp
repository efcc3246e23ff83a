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

#ifndef SUBMAX_MULTILINEAR_HPP_
#define SUBMAX_MULTILINEAR_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "submax/enumerate.hpp"
#include "submax/objective.hpp"
#include "submax/rng.hpp"
#include "submax/strategy.hpp"

namespace submax {

// I rows, each a distribution over `width` strategies. Width is K, or K+1
// when abstaining is itself a samplable strategy (column K means kEmpty).
class ProbabilityProfile {
 public:
  ProbabilityProfile() = default;
  ProbabilityProfile(int num_agents, int width);

  static ProbabilityProfile Uniform(int num_agents, int width);
  // Row i is the unit vector on profile[i]; kEmpty maps to column K, which
  // must exist.
  static ProbabilityProfile FromVertices(const StrategyProfile& profile,
                                         int width, int num_strategies);

  int num_agents() const { return num_agents_; }
  int width() const { return width_; }

  std::span<double> row(int agent) {
    return {values_.data() + static_cast<std::size_t>(agent) * width_,
            static_cast<std::size_t>(width_)};
  }
  std::span<const double> row(int agent) const {
    return {values_.data() + static_cast<std::size_t>(agent) * width_,
            static_cast<std::size_t>(width_)};
  }
  std::span<const double> values() const { return values_; }

  // Throws InvalidArgument unless every row is in [0,1] and sums to 1
  // within `tolerance`.
  void Validate(double tolerance = 1e-9) const;

  // Sum over agents of ||row_i - other.row_i||^2.
  double SquaredDistance(const ProbabilityProfile& other) const;

  friend bool operator==(const ProbabilityProfile&,
                         const ProbabilityProfile&) = default;

 private:
  int num_agents_ = 0;
  int width_ = 0;
  std::vector<double> values_;
};

// Maps a column of a probability row to a choice: column K is kEmpty.
inline int ChoiceForColumn(int column, int num_strategies) {
  return column < num_strategies ? column : kEmpty;
}

enum class GradientKind { kFull, kSampled };

// Partial derivatives of f with respect to one agent's row.
struct GradientBlock {
  int agent = 0;
  std::vector<double> values;
  GradientKind kind = GradientKind::kFull;
  int sample_size = 0;  // M, sampled gradients only
  // The M context profiles drawn (agent's own slot is kEmpty).
  std::vector<StrategyProfile> samples;
};

// f(P) = sum over all profiles A of prod_i p_i(a_i) * F(A).
double EvalExact(const ObjectiveOracle& oracle, const ProbabilityProfile& p,
                 std::uint64_t limit = kDefaultEnumerationLimit);

// Exact d f / d p_agent(a) for every column a: the expectation of
// F(a; A_{-agent}) with the other agents drawn from their rows.
GradientBlock FullGradient(const ObjectiveOracle& oracle,
                           const ProbabilityProfile& p, int agent,
                           std::uint64_t limit = kDefaultEnumerationLimit);

// Inverse-CDF draw of a column of `row`. Columns with zero mass are never
// returned. Throws InvalidArgument on a row with no positive mass.
int SampleStrategy(std::span<const double> row, StreamRng& rng);

// Sample mean of F(a; A^s_{-agent}) over M contexts drawn i.i.d. from the
// other rows. The same M contexts serve every column.
GradientBlock StochasticGradient(const ObjectiveOracle& oracle,
                                 const ProbabilityProfile& p, int agent,
                                 int sample_size, StreamRng& rng);

// Kernel shared by the optimizers. `contexts` holds M profiles of length
// I back to back; the agent's own slot is ignored. Writes the column means
// into `out` (size = width) using `scratch` (size >= width).
void SampledGradientFromContexts(const ObjectiveOracle& oracle, int agent,
                                 std::span<const int> contexts,
                                 int sample_size, std::span<double> out,
                                 std::span<double> scratch);

}  // namespace submax

#endif  // SUBMAX_MULTILINEAR_HPP_

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

#include "submax/multilinear.hpp"

#include <algorithm>
#include <cmath>

#include "submax/errors.hpp"

namespace submax {

ProbabilityProfile::ProbabilityProfile(int num_agents, int width)
    : num_agents_(num_agents),
      width_(width),
      values_(static_cast<std::size_t>(num_agents) * width, 0.0) {
  if (num_agents < 1 || width < 1)
    throw InvalidArgument("probability profile needs I >= 1 and width >= 1");
}

ProbabilityProfile ProbabilityProfile::Uniform(int num_agents, int width) {
  ProbabilityProfile p(num_agents, width);
  std::fill(p.values_.begin(), p.values_.end(), 1.0 / width);
  return p;
}

ProbabilityProfile ProbabilityProfile::FromVertices(
    const StrategyProfile& profile, int width, int num_strategies) {
  ProbabilityProfile p(profile.size(), width);
  for (int i = 0; i < profile.size(); ++i) {
    const int column = profile[i] == kEmpty ? num_strategies : profile[i];
    if (column < 0 || column >= width)
      throw InvalidArgument("vertex column outside the row width");
    p.row(i)[column] = 1.0;
  }
  return p;
}

void ProbabilityProfile::Validate(double tolerance) const {
  for (int i = 0; i < num_agents_; ++i) {
    double sum = 0.0;
    for (double v : row(i)) {
      if (!std::isfinite(v) || v < 0.0 || v > 1.0 + tolerance)
        throw InvalidArgument("row " + std::to_string(i) +
                              " has an entry outside [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > tolerance)
      throw InvalidArgument("row " + std::to_string(i) + " sums to " +
                            std::to_string(sum));
  }
}

double ProbabilityProfile::SquaredDistance(
    const ProbabilityProfile& other) const {
  double total = 0.0;
  for (std::size_t n = 0; n < values_.size(); ++n) {
    const double d = values_[n] - other.values_[n];
    total += d * d;
  }
  return total;
}

namespace {

void CheckShapes(const ObjectiveOracle& oracle, const ProbabilityProfile& p) {
  if (p.num_agents() != oracle.num_agents())
    throw InvalidArgument("profile and oracle disagree on the agent count");
  const int k = oracle.num_strategies();
  if (p.width() != k && p.width() != k + 1)
    throw InvalidArgument("row width must be K or K+1");
}

}  // namespace

double EvalExact(const ObjectiveOracle& oracle, const ProbabilityProfile& p,
                 std::uint64_t limit) {
  CheckShapes(oracle, p);
  const int agents = p.num_agents();
  const int width = p.width();
  const int k = oracle.num_strategies();
  const auto count = CheckedPow(width, agents);
  RequireWithinLimit(count, limit, "exact multilinear extension");

  std::vector<int> digits(agents, 0);
  std::vector<int> choices(agents);
  double total = 0.0;
  for (std::uint64_t index = 0; index < *count; ++index) {
    double weight = 1.0;
    for (int i = 0; i < agents && weight != 0.0; ++i)
      weight *= p.row(i)[digits[i]];
    if (weight != 0.0) {
      for (int i = 0; i < agents; ++i)
        choices[i] = ChoiceForColumn(digits[i], k);
      total += weight * oracle.Value(choices);
    }
    NextIndex(digits, width);
  }
  return total;
}

GradientBlock FullGradient(const ObjectiveOracle& oracle,
                           const ProbabilityProfile& p, int agent,
                           std::uint64_t limit) {
  CheckShapes(oracle, p);
  if (agent < 0 || agent >= p.num_agents())
    throw InvalidArgument("agent index out of range");
  const int agents = p.num_agents();
  const int width = p.width();
  const int k = oracle.num_strategies();
  const auto contexts = CheckedPow(width, agents - 1);
  RequireWithinLimit(CheckedMul(contexts, width), limit, "full gradient");

  GradientBlock block;
  block.agent = agent;
  block.kind = GradientKind::kFull;
  block.values.assign(width, 0.0);
  std::vector<double> values(width);
  std::vector<int> digits(agents - 1, 0);
  std::vector<int> context(agents, kEmpty);
  for (std::uint64_t c = 0; c < *contexts; ++c) {
    double weight = 1.0;
    for (int j = 0, d = 0; j < agents; ++j) {
      if (j == agent) continue;
      weight *= p.row(j)[digits[d]];
      context[j] = ChoiceForColumn(digits[d], k);
      ++d;
    }
    if (weight != 0.0) {
      oracle.ValuesForAgent(context, agent, values);
      for (int a = 0; a < width; ++a) block.values[a] += weight * values[a];
    }
    NextIndex(digits, width);
  }
  return block;
}

int SampleStrategy(std::span<const double> row, StreamRng& rng) {
  double total = 0.0;
  for (double v : row) {
    if (v > 0.0) total += v;
  }
  if (!(total > 0.0) || !std::isfinite(total))
    throw InvalidArgument("cannot sample from a row without positive mass");
  const double target = rng.Uniform() * total;
  double cumulative = 0.0;
  int last = -1;
  for (std::size_t a = 0; a < row.size(); ++a) {
    if (!(row[a] > 0.0)) continue;
    cumulative += row[a];
    last = static_cast<int>(a);
    if (target < cumulative) return last;
  }
  return last;
}

void SampledGradientFromContexts(const ObjectiveOracle& oracle, int agent,
                                 std::span<const int> contexts,
                                 int sample_size, std::span<double> out,
                                 std::span<double> scratch) {
  const std::size_t agents = static_cast<std::size_t>(oracle.num_agents());
  const auto values = scratch.first(out.size());
  std::fill(out.begin(), out.end(), 0.0);
  for (int s = 0; s < sample_size; ++s) {
    oracle.ValuesForAgent(contexts.subspan(s * agents, agents), agent, values);
    for (std::size_t a = 0; a < out.size(); ++a) out[a] += values[a];
  }
  for (double& v : out) v /= sample_size;
}

GradientBlock StochasticGradient(const ObjectiveOracle& oracle,
                                 const ProbabilityProfile& p, int agent,
                                 int sample_size, StreamRng& rng) {
  CheckShapes(oracle, p);
  if (agent < 0 || agent >= p.num_agents())
    throw InvalidArgument("agent index out of range");
  if (sample_size < 1) throw InvalidArgument("sample size must be >= 1");
  const int agents = p.num_agents();
  const int k = oracle.num_strategies();

  GradientBlock block;
  block.agent = agent;
  block.kind = GradientKind::kSampled;
  block.sample_size = sample_size;
  std::vector<int> contexts(static_cast<std::size_t>(sample_size) * agents,
                            kEmpty);
  for (int s = 0; s < sample_size; ++s) {
    for (int j = 0; j < agents; ++j) {
      if (j == agent) continue;
      contexts[s * agents + j] = ChoiceForColumn(SampleStrategy(p.row(j), rng), k);
    }
    block.samples.emplace_back(std::vector<int>(
        contexts.begin() + s * agents, contexts.begin() + (s + 1) * agents));
  }
  block.values.assign(p.width(), 0.0);
  std::vector<double> scratch(p.width());
  SampledGradientFromContexts(oracle, agent, contexts, sample_size,
                              block.values, scratch);
  return block;
}

}  // namespace submax

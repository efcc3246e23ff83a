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

#include "submax/objective.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "submax/errors.hpp"
#include "submax/rng.hpp"

namespace submax {

ObjectiveOracle::ObjectiveOracle(int num_agents, int num_strategies)
    : num_agents_(num_agents), num_strategies_(num_strategies) {
  if (num_agents < 1) throw InvalidArgument("oracle needs at least one agent");
  if (num_strategies < 1)
    throw InvalidArgument("oracle needs at least one strategy");
}

void ObjectiveOracle::ValuesForAgent(std::span<const int> context, int agent,
                                     std::span<double> out) const {
  std::vector<int> profile(context.begin(), context.end());
  for (std::size_t a = 0; a < out.size(); ++a) {
    profile[agent] = static_cast<int>(a) < num_strategies_
                         ? static_cast<int>(a)
                         : kEmpty;
    out[a] = Value(profile);
  }
}

FunctionObjective::FunctionObjective(int num_agents, int num_strategies, Fn fn,
                                     double upper_bound)
    : ObjectiveOracle(num_agents, num_strategies),
      fn_(std::move(fn)),
      upper_bound_(upper_bound) {}

// ---------------------------------------------------------------------------
// Coverage

namespace {

int CheckedStrategyCount(const std::vector<std::vector<int>>& sets) {
  if (sets.empty()) throw InvalidArgument("coverage needs at least one set");
  return static_cast<int>(sets.size());
}

// Returns the count of bits newly set.
int MarkIds(std::span<const int> ids, std::span<std::uint64_t> mask) {
  int added = 0;
  for (int id : ids) {
    std::uint64_t& word = mask[static_cast<std::size_t>(id) >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (id & 63);
    added += (word & bit) == 0;
    word |= bit;
  }
  return added;
}

int CountUnmarked(std::span<const int> ids,
                  std::span<const std::uint64_t> mask) {
  int fresh = 0;
  for (int id : ids) {
    fresh += ((mask[static_cast<std::size_t>(id) >> 6] >> (id & 63)) & 1) == 0;
  }
  return fresh;
}

}  // namespace

CoverageObjective::CoverageObjective(int num_agents, int universe_size,
                                     std::vector<std::vector<int>> liker_sets)
    : ObjectiveOracle(num_agents, CheckedStrategyCount(liker_sets)),
      universe_size_(universe_size),
      words_((universe_size + 63) / 64),
      likers_(std::move(liker_sets)) {
  if (universe_size < 0) throw InvalidArgument("negative universe size");
  for (auto& set : likers_) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (!set.empty() && (set.front() < 0 || set.back() >= universe_size)) {
      throw InvalidArgument("user id outside [0, universe_size)");
    }
  }
  if (universe_size > 0 && universe_size <= kBitsetUniverseLimit) {
    bits_.assign(likers_.size() * static_cast<std::size_t>(words_), 0);
    for (std::size_t j = 0; j < likers_.size(); ++j) {
      MarkIds(likers_[j], {bits_.data() + j * words_,
                           static_cast<std::size_t>(words_)});
    }
  }
}

CoverageObjective CoverageObjective::WithAgents(int num_agents) const {
  return CoverageObjective(num_agents, universe_size_, likers_);
}

void CoverageObjective::MarkUnion(std::span<const int> choices, int skip,
                                  std::span<std::uint64_t> mask) const {
  for (std::size_t i = 0; i < choices.size(); ++i) {
    const int a = choices[i];
    if (static_cast<int>(i) == skip || a == kEmpty) continue;
    if (!bits_.empty()) {
      const auto row = row_bits(a);
      for (int w = 0; w < words_; ++w) mask[w] |= row[w];
    } else {
      MarkIds(likers_[a], mask);
    }
  }
}

double CoverageObjective::Value(std::span<const int> choices) const {
  if (universe_size_ == 0) return 0.0;
  if (!bits_.empty()) {
    std::array<std::uint64_t, kBitsetUniverseLimit / 64> mask{};
    MarkUnion(choices, -1, {mask.data(), static_cast<std::size_t>(words_)});
    int count = 0;
    for (int w = 0; w < words_; ++w) count += std::popcount(mask[w]);
    return count;
  }
  thread_local std::vector<std::uint64_t> mask;
  mask.assign(words_, 0);
  int count = 0;
  for (int a : choices) {
    if (a != kEmpty) count += MarkIds(likers_[a], mask);
  }
  return count;
}

void CoverageObjective::ValuesForAgent(std::span<const int> context, int agent,
                                       std::span<double> out) const {
  const int k = num_strategies();
  if (universe_size_ == 0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  if (!bits_.empty()) {
    std::array<std::uint64_t, kBitsetUniverseLimit / 64> mask{};
    MarkUnion(context, agent, {mask.data(), static_cast<std::size_t>(words_)});
    int base = 0;
    for (int w = 0; w < words_; ++w) base += std::popcount(mask[w]);
    for (int a = 0; a < k && a < static_cast<int>(out.size()); ++a) {
      const auto row = row_bits(a);
      int fresh = 0;
      for (int w = 0; w < words_; ++w) fresh += std::popcount(row[w] & ~mask[w]);
      out[a] = base + fresh;
    }
    if (static_cast<int>(out.size()) > k) out[k] = base;
    return;
  }
  thread_local std::vector<std::uint64_t> mask;
  mask.assign(words_, 0);
  int base = 0;
  for (std::size_t i = 0; i < context.size(); ++i) {
    if (static_cast<int>(i) == agent || context[i] == kEmpty) continue;
    base += MarkIds(likers_[context[i]], mask);
  }
  for (int a = 0; a < k && a < static_cast<int>(out.size()); ++a) {
    out[a] = base + CountUnmarked(likers_[a], mask);
  }
  if (static_cast<int>(out.size()) > k) out[k] = base;
}

// ---------------------------------------------------------------------------
// Checked evaluation

namespace {

void ValidateProfile(const ObjectiveOracle& oracle,
                     const StrategyProfile& profile) {
  if (profile.size() != oracle.num_agents()) {
    throw InvalidArgument("profile has " + std::to_string(profile.size()) +
                          " entries, oracle has " +
                          std::to_string(oracle.num_agents()) + " agents");
  }
  for (int i = 0; i < profile.size(); ++i) {
    const int a = profile[i];
    if (a != kEmpty && (a < 0 || a >= oracle.num_strategies())) {
      throw InvalidArgument("strategy " + std::to_string(a) + " of agent " +
                            std::to_string(i) + " out of range");
    }
  }
}

// Digit 0 is EMPTY, digit d > 0 is strategy d-1.
int DigitToChoice(int digit) { return digit == 0 ? kEmpty : digit - 1; }

}  // namespace

double Evaluate(const ObjectiveOracle& oracle, const StrategyProfile& profile) {
  ValidateProfile(oracle, profile);
  return oracle.Value(profile.choices());
}

double MarginalGain(const ObjectiveOracle& oracle,
                    const StrategyProfile& profile, int agent, int strategy) {
  ValidateProfile(oracle, profile);
  if (agent < 0 || agent >= oracle.num_agents())
    throw InvalidArgument("agent index out of range");
  if (strategy < 0 || strategy >= oracle.num_strategies())
    throw InvalidArgument("strategy index out of range");
  if (!profile.IsEmpty(agent))
    throw InvalidArgument("marginal gain needs an EMPTY slot at agent " +
                          std::to_string(agent));
  StrategyProfile grown = profile;
  grown[agent] = strategy;
  return oracle.Value(grown.choices()) - oracle.Value(profile.choices());
}

// ---------------------------------------------------------------------------
// Exhaustive property checks
//
// Both checks tabulate F over {EMPTY, 0..K-1}^I once, then compare table
// entries. Index arithmetic: slot i has weight (K+1)^(I-1-i), digit 0 is
// EMPTY.

namespace {

struct ValueTable {
  int agents;
  int radix;
  std::vector<std::uint64_t> weights;
  std::vector<double> values;
};

ValueTable Tabulate(const ObjectiveOracle& oracle, std::uint64_t limit) {
  const int agents = oracle.num_agents();
  const int radix = oracle.num_strategies() + 1;
  const auto count = CheckedPow(radix, agents);
  RequireWithinLimit(count, limit, "exhaustive property check");
  ValueTable table{agents, radix, std::vector<std::uint64_t>(agents),
                   std::vector<double>(*count)};
  std::uint64_t w = 1;
  for (int i = agents; i-- > 0;) {
    table.weights[i] = w;
    w *= radix;
  }
  std::vector<int> digits(agents, 0);
  std::vector<int> choices(agents, kEmpty);
  for (std::uint64_t index = 0; index < *count; ++index) {
    for (int i = 0; i < agents; ++i) choices[i] = DigitToChoice(digits[i]);
    table.values[index] = oracle.Value(choices);
    NextIndex(digits, radix);
  }
  return table;
}

StrategyProfile ProfileAt(const ValueTable& table, std::uint64_t index) {
  std::vector<int> digits(table.agents);
  DecodeIndex(index, table.radix, digits);
  for (int& d : digits) d = DigitToChoice(d);
  return StrategyProfile(std::move(digits));
}

}  // namespace

PropertyReport CheckMonotone(const ObjectiveOracle& oracle,
                             std::uint64_t limit, double tolerance) {
  const ValueTable table = Tabulate(oracle, limit);
  PropertyReport report;
  report.oracle_calls = table.values.size();
  std::vector<int> digits(table.agents, 0);
  for (std::uint64_t index = 0; index < table.values.size(); ++index) {
    for (int i = 0; i < table.agents; ++i) {
      if (digits[i] == 0) continue;
      const std::uint64_t blanked = index - digits[i] * table.weights[i];
      const double small = table.values[blanked];
      const double large = table.values[index];
      if (small > large + tolerance) {
        report.passed = false;
        report.smaller = ProfileAt(table, blanked);
        report.larger = ProfileAt(table, index);
        report.agent = i;
        report.lhs = small;
        report.rhs = large;
        report.message = "F(" + report.smaller->ToString() + ") = " +
                         std::to_string(small) + " > F(" +
                         report.larger->ToString() + ") = " +
                         std::to_string(large);
        return report;
      }
    }
    NextIndex(digits, table.radix);
  }
  return report;
}

PropertyReport CheckSubmodular(const ObjectiveOracle& oracle,
                               std::uint64_t limit, double tolerance) {
  const ValueTable table = Tabulate(oracle, limit);
  const int k = oracle.num_strategies();
  PropertyReport report;
  report.oracle_calls = table.values.size();
  std::vector<int> digits(table.agents, 0);
  for (std::uint64_t index = 0; index < table.values.size(); ++index) {
    for (int i = 0; i < table.agents; ++i) {
      if (digits[i] == 0) continue;
      const std::uint64_t smaller = index - digits[i] * table.weights[i];
      for (int j = 0; j < table.agents; ++j) {
        if (j == i || digits[j] != 0) continue;
        for (int a = 0; a < k; ++a) {
          const std::uint64_t step = (a + 1) * table.weights[j];
          const double gain_small =
              table.values[smaller + step] - table.values[smaller];
          const double gain_large =
              table.values[index + step] - table.values[index];
          if (gain_small + tolerance < gain_large) {
            report.passed = false;
            report.smaller = ProfileAt(table, smaller);
            report.larger = ProfileAt(table, index);
            report.agent = i;
            report.added_agent = j;
            report.added_strategy = a;
            report.lhs = gain_small;
            report.rhs = gain_large;
            report.message =
                "adding strategy " + std::to_string(a) + " at agent " +
                std::to_string(j) + " gains " + std::to_string(gain_small) +
                " on " + report.smaller->ToString() + " but " +
                std::to_string(gain_large) + " on " +
                report.larger->ToString();
            return report;
          }
        }
      }
    }
    NextIndex(digits, table.radix);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Delta max and distinguishability

namespace {

double Spread(std::span<const double> values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

}  // namespace

DeltaMaxEstimate DeltaMaxExact(const ObjectiveOracle& oracle,
                               const DeltaMaxOptions& options,
                               std::uint64_t limit) {
  const int agents = oracle.num_agents();
  const int k = oracle.num_strategies();
  const int radix = options.include_empty ? k + 1 : k;
  const auto contexts = CheckedPow(radix, agents - 1);
  RequireWithinLimit(CheckedMul(CheckedMul(contexts, agents), k), limit,
                     "exact delta max");
  DeltaMaxEstimate estimate;
  estimate.exact = true;
  std::vector<int> digits(agents - 1, 0);
  std::vector<int> context(agents, kEmpty);
  std::vector<double> values(k);
  for (int i = 0; i < agents; ++i) {
    std::fill(digits.begin(), digits.end(), 0);
    for (std::uint64_t c = 0; c < *contexts; ++c) {
      for (int j = 0, d = 0; j < agents; ++j) {
        if (j == i) continue;
        context[j] = options.include_empty ? DigitToChoice(digits[d]) : digits[d];
        ++d;
      }
      oracle.ValuesForAgent(context, i, values);
      estimate.value = std::max(estimate.value, Spread(values));
      ++estimate.samples_used;
      NextIndex(digits, radix);
    }
  }
  return estimate;
}

DeltaMaxEstimate DeltaMaxSampled(const ObjectiveOracle& oracle, int samples,
                                 std::uint64_t seed,
                                 const DeltaMaxOptions& options) {
  if (samples < 1) throw InvalidArgument("delta max needs samples >= 1");
  const int agents = oracle.num_agents();
  const int k = oracle.num_strategies();
  DeltaMaxEstimate estimate;
  std::vector<int> context(agents, kEmpty);
  std::vector<double> values(k);
  for (int s = 0; s < samples; ++s) {
    StreamRng rng(seed, static_cast<std::uint64_t>(s), 0xD17A);
    const int agent = static_cast<int>(rng.Below(agents));
    for (int j = 0; j < agents; ++j) {
      if (j == agent) continue;
      context[j] = options.include_empty
                       ? DigitToChoice(static_cast<int>(rng.Below(k + 1)))
                       : static_cast<int>(rng.Below(k));
    }
    oracle.ValuesForAgent(context, agent, values);
    estimate.value = std::max(estimate.value, Spread(values));
    ++estimate.samples_used;
  }
  return estimate;
}

DistinguishabilityReport CheckDistinguishable(const ObjectiveOracle& oracle,
                                              double tolerance,
                                              std::uint64_t limit) {
  const int agents = oracle.num_agents();
  const int k = oracle.num_strategies();
  const auto contexts = CheckedPow(k, agents - 1);
  RequireWithinLimit(CheckedMul(CheckedMul(contexts, agents), k), limit,
                     "distinguishability check");
  DistinguishabilityReport report;
  std::vector<int> digits(agents - 1, 0);
  std::vector<int> context(agents, 0);
  std::vector<double> values(k);
  for (int i = 0; i < agents; ++i) {
    std::fill(digits.begin(), digits.end(), 0);
    for (std::uint64_t c = 0; c < *contexts; ++c) {
      for (int j = 0, d = 0; j < agents; ++j) {
        if (j != i) context[j] = digits[d++];
      }
      context[i] = kEmpty;
      oracle.ValuesForAgent(context, i, values);
      report.oracle_calls += k;
      const double best = *std::max_element(values.begin(), values.end());
      const auto near_best = std::count_if(
          values.begin(), values.end(),
          [&](double v) { return v >= best - tolerance; });
      if (near_best > 1) {
        report.distinguishable = false;
        report.agent = i;
        report.context = StrategyProfile(context);
        return report;
      }
      NextIndex(digits, k);
    }
  }
  return report;
}

}  // namespace submax

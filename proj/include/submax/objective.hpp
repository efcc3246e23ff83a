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

#ifndef SUBMAX_OBJECTIVE_HPP_
#define SUBMAX_OBJECTIVE_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "submax/enumerate.hpp"
#include "submax/strategy.hpp"

namespace submax {

// The shared set-function oracle F over strategy profiles.
//
// Every agent picks from the same number K of strategies. Implementations
// must make Value() safe to call concurrently: construction is the only
// mutating phase.
class ObjectiveOracle {
 public:
  ObjectiveOracle(int num_agents, int num_strategies);
  virtual ~ObjectiveOracle() = default;

  int num_agents() const { return num_agents_; }
  int num_strategies() const { return num_strategies_; }

  // F(A). No bounds checking; entries are indices in [0, K) or kEmpty.
  virtual double Value(std::span<const int> choices) const = 0;

  // out[a] = F(a; A_{-agent}) for a < K, reading every slot of `context`
  // except `agent`. If out has K+1 entries, out[K] is the value with the
  // agent abstaining. The default builds each profile and calls Value().
  virtual void ValuesForAgent(std::span<const int> context, int agent,
                              std::span<double> out) const;

  // Upper bound on F over all profiles (infinity if unknown).
  virtual double UpperBound() const {
    return std::numeric_limits<double>::infinity();
  }

 private:
  int num_agents_;
  int num_strategies_;
};

// Adapts a callable into an oracle; mostly for tests and property checks.
class FunctionObjective final : public ObjectiveOracle {
 public:
  using Fn = std::function<double(std::span<const int>)>;

  FunctionObjective(int num_agents, int num_strategies, Fn fn,
                    double upper_bound =
                        std::numeric_limits<double>::infinity());

  double Value(std::span<const int> choices) const override {
    return fn_(choices);
  }
  double UpperBound() const override { return upper_bound_; }

 private:
  Fn fn_;
  double upper_bound_;
};

// F(A) = |union of U(a_i)| over non-empty slots, where every agent draws
// from one shared pool of K candidates and U(j) is the liker set of
// candidate j. User ids are dense in [0, universe_size).
//
// Universes up to kBitsetUniverseLimit are stored as bitsets; larger ones
// as sorted id lists.
class CoverageObjective final : public ObjectiveOracle {
 public:
  static constexpr int kBitsetUniverseLimit = 4096;

  CoverageObjective(int num_agents, int universe_size,
                    std::vector<std::vector<int>> liker_sets);

  double Value(std::span<const int> choices) const override;
  void ValuesForAgent(std::span<const int> context, int agent,
                      std::span<double> out) const override;
  double UpperBound() const override { return universe_size_; }

  int universe_size() const { return universe_size_; }
  bool uses_bitset() const { return !bits_.empty() || universe_size_ == 0; }
  // Sorted, duplicate-free.
  std::span<const int> likers(int strategy) const { return likers_[strategy]; }
  const std::vector<std::vector<int>>& liker_sets() const { return likers_; }

  // Same liker sets, different agent count.
  CoverageObjective WithAgents(int num_agents) const;

 private:
  // Marks the union of the non-empty slots other than `skip` in `mask`.
  void MarkUnion(std::span<const int> choices, int skip,
                 std::span<std::uint64_t> mask) const;
  std::span<const std::uint64_t> row_bits(int strategy) const {
    return {bits_.data() + static_cast<std::size_t>(strategy) * words_,
            static_cast<std::size_t>(words_)};
  }

  int universe_size_;
  int words_;
  std::vector<std::vector<int>> likers_;
  std::vector<std::uint64_t> bits_;  // K rows of words_, bitset mode only
};

// Checked F(A): validates the length and every index.
double Evaluate(const ObjectiveOracle& oracle, const StrategyProfile& profile);

// delta(a | A) = F(A with agent playing a) - F(A). The agent's slot must
// be kEmpty in `profile`.
double MarginalGain(const ObjectiveOracle& oracle,
                    const StrategyProfile& profile, int agent, int strategy);

// Outcome of an exhaustive property check.
struct PropertyReport {
  bool passed = true;
  std::uint64_t oracle_calls = 0;
  // First counterexample in enumeration order. For monotonicity `smaller`
  // is `larger` with `agent` blanked; for submodularity the triple is
  // (smaller, larger, strategy added at agent `added_agent`).
  std::optional<StrategyProfile> smaller;
  std::optional<StrategyProfile> larger;
  int agent = -1;
  int added_agent = -1;
  int added_strategy = -1;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string message;
};

// Checks F(A') <= F(A) for every containment pair obtained by blanking one
// slot of a profile A over {EMPTY, 0..K-1}^I.
PropertyReport CheckMonotone(const ObjectiveOracle& oracle,
                             std::uint64_t limit = kDefaultEnumerationLimit,
                             double tolerance = 1e-12);

// Checks F(A' + a) - F(A') >= F(A + a) - F(A) for every A' obtained by
// blanking one filled slot of A and every strategy a placed in a slot that
// is empty in A.
PropertyReport CheckSubmodular(const ObjectiveOracle& oracle,
                               std::uint64_t limit = kDefaultEnumerationLimit,
                               double tolerance = 1e-12);

// Largest gap between two strategies of one agent under a fixed context.
struct DeltaMaxEstimate {
  double value = 0.0;
  bool exact = false;
  std::uint64_t samples_used = 0;  // contexts examined
  // value == 0: no strategy is ever distinguishable from another.
  bool degenerate() const { return value <= 0.0; }
};

struct DeltaMaxOptions {
  // Let other agents abstain in the contexts being maximized over.
  bool include_empty = true;
};

DeltaMaxEstimate DeltaMaxExact(const ObjectiveOracle& oracle,
                               const DeltaMaxOptions& options = {},
                               std::uint64_t limit = kDefaultEnumerationLimit);

// Lower bound from `samples` random (agent, context) draws.
DeltaMaxEstimate DeltaMaxSampled(const ObjectiveOracle& oracle, int samples,
                                 std::uint64_t seed,
                                 const DeltaMaxOptions& options = {});

// Whether every agent has a unique best response in every fully specified
// context (no kEmpty). Ties are values within `tolerance` of the maximum.
struct DistinguishabilityReport {
  bool distinguishable = true;
  std::uint64_t oracle_calls = 0;
  int agent = -1;                      // first tie found
  std::optional<StrategyProfile> context;
};

DistinguishabilityReport CheckDistinguishable(
    const ObjectiveOracle& oracle, double tolerance = 1e-12,
    std::uint64_t limit = kDefaultEnumerationLimit);

// Instance text format:
//
//   I K universe_size
//   <ids liked for candidate 0>
//   ...
//   <ids liked for candidate K-1>
//
// Ids are space-separated, ascending; an empty line is an empty set. Lines
// starting with '#' before the header are comments.
void WriteInstance(std::ostream& out, const CoverageObjective& objective);
CoverageObjective ReadInstance(std::istream& in);
void WriteInstanceFile(const std::string& path,
                       const CoverageObjective& objective);
CoverageObjective ReadInstanceFile(const std::string& path);

}  // namespace submax

#endif  // SUBMAX_OBJECTIVE_HPP_

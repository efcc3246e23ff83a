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

#ifndef SUBMAX_BASELINES_HPP_
#define SUBMAX_BASELINES_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "submax/enumerate.hpp"
#include "submax/objective.hpp"
#include "submax/optimizer.hpp"
#include "submax/strategy.hpp"

namespace submax {

enum class SolutionKind { kGreedy, kBruteForce, kEquilibrium };

std::string ToString(SolutionKind kind);

struct CertifiedSolution {
  StrategyProfile profile;
  double value = 0.0;
  SolutionKind kind = SolutionKind::kGreedy;
  std::optional<double> ratio_vs_optimal;
  std::uint64_t oracle_calls = 0;
};

// Fills agents one at a time from all-kEmpty, each with its best marginal
// gain (lowest index on ties). `order` defaults to 0..I-1.
CertifiedSolution Greedy(const ObjectiveOracle& oracle,
                         std::span<const int> order = {});

// Exact optimum over K^I fully specified profiles; the lexicographically
// smallest maximizer wins ties.
CertifiedSolution BruteForce(const ObjectiveOracle& oracle,
                             std::uint64_t limit = kDefaultEnumerationLimit,
                             Execution execution = Execution::kParallel);

// Every fully specified equilibrium, lexicographic order, each with its
// ratio to the brute-force optimum.
std::vector<CertifiedSolution> EnumerateEquilibria(
    const ObjectiveOracle& oracle, double eps_eq = 1e-12,
    std::uint64_t limit = kDefaultEnumerationLimit,
    Execution execution = Execution::kParallel);

}  // namespace submax

#endif  // SUBMAX_BASELINES_HPP_

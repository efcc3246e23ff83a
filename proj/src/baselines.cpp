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

#include "submax/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "submax/errors.hpp"

namespace submax {

namespace {

// Profiles are visited in chunks so threads can work independently and the
// merge stays in lexicographic order.
constexpr std::uint64_t kChunk = 4096;

struct ChunkResult {
  double best_value = -1.0;
  std::uint64_t best_index = 0;
  std::vector<std::uint64_t> equilibria;
  std::vector<double> values;
};

template <typename Body>
std::vector<ChunkResult> ForEachChunk(std::uint64_t total, Execution execution,
                                      Body body) {
  const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<ChunkResult> results(chunks);
  const auto n = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic) if (execution == Execution::kParallel)
  for (std::int64_t c = 0; c < n; ++c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    body(begin, std::min(total, begin + kChunk), results[c]);
  }
  return results;
}

StrategyProfile ProfileAt(std::uint64_t index, int agents, int radix) {
  std::vector<int> digits(agents);
  DecodeIndex(index, radix, digits);
  return StrategyProfile(std::move(digits));
}

}  // namespace

std::string ToString(SolutionKind kind) {
  switch (kind) {
    case SolutionKind::kGreedy:
      return "greedy";
    case SolutionKind::kBruteForce:
      return "brute_force";
    case SolutionKind::kEquilibrium:
      return "equilibrium";
  }
  return "unknown";
}

CertifiedSolution Greedy(const ObjectiveOracle& oracle,
                         std::span<const int> order) {
  const int agents = oracle.num_agents();
  const int k = oracle.num_strategies();
  std::vector<int> sequence(agents);
  if (order.empty()) {
    std::iota(sequence.begin(), sequence.end(), 0);
  } else {
    sequence.assign(order.begin(), order.end());
    auto sorted = sequence;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < agents; ++i) {
      if (static_cast<int>(sorted.size()) != agents || sorted[i] != i)
        throw InvalidArgument("greedy order must be a permutation of agents");
    }
  }
  CertifiedSolution solution;
  solution.kind = SolutionKind::kGreedy;
  solution.profile = StrategyProfile::AllEmpty(agents);
  std::vector<double> values(k + 1);
  for (int agent : sequence) {
    oracle.ValuesForAgent(solution.profile.choices(), agent, values);
    solution.oracle_calls += k;
    int best = 0;
    for (int a = 1; a < k; ++a) {
      if (values[a] > values[best]) best = a;
    }
    solution.profile[agent] = best;
    solution.value = values[best];
  }
  return solution;
}

CertifiedSolution BruteForce(const ObjectiveOracle& oracle,
                             std::uint64_t limit, Execution execution) {
  const int agents = oracle.num_agents();
  const int k = oracle.num_strategies();
  const auto total = CheckedPow(k, agents);
  RequireWithinLimit(total, limit, "brute force");

  auto chunks = ForEachChunk(*total, execution, [&](std::uint64_t begin,
                                                    std::uint64_t end,
                                                    ChunkResult& out) {
    std::vector<int> digits(agents);
    DecodeIndex(begin, k, digits);
    for (std::uint64_t index = begin; index < end; ++index) {
      const double value = oracle.Value(digits);
      if (value > out.best_value) {
        out.best_value = value;
        out.best_index = index;
      }
      NextIndex(digits, k);
    }
  });

  double best_value = -1.0;
  std::uint64_t best_index = 0;
  for (const auto& chunk : chunks) {
    if (chunk.best_value > best_value) {
      best_value = chunk.best_value;
      best_index = chunk.best_index;
    }
  }
  CertifiedSolution solution;
  solution.kind = SolutionKind::kBruteForce;
  solution.profile = ProfileAt(best_index, agents, k);
  solution.value = best_value;
  solution.ratio_vs_optimal = 1.0;
  solution.oracle_calls = *total;
  return solution;
}

std::vector<CertifiedSolution> EnumerateEquilibria(
    const ObjectiveOracle& oracle, double eps_eq, std::uint64_t limit,
    Execution execution) {
  const int agents = oracle.num_agents();
  const int k = oracle.num_strategies();
  const auto total = CheckedPow(k, agents);
  RequireWithinLimit(CheckedMul(CheckedMul(total, agents), k), limit,
                     "equilibrium enumeration");

  auto chunks = ForEachChunk(*total, execution, [&](std::uint64_t begin,
                                                    std::uint64_t end,
                                                    ChunkResult& out) {
    std::vector<int> digits(agents);
    std::vector<double> values(k + 1);
    DecodeIndex(begin, k, digits);
    for (std::uint64_t index = begin; index < end; ++index) {
      bool equilibrium = true;
      double value = 0.0;
      for (int i = 0; i < agents; ++i) {
        oracle.ValuesForAgent(digits, i, values);
        const double current = values[digits[i]];
        value = current;
        for (int a = 0; a < k && equilibrium; ++a) {
          if (values[a] > current + eps_eq) equilibrium = false;
        }
        if (!equilibrium) break;
      }
      if (!equilibrium) value = oracle.Value(digits);
      if (value > out.best_value) out.best_value = value;
      if (equilibrium) {
        out.equilibria.push_back(index);
        out.values.push_back(value);
      }
      NextIndex(digits, k);
    }
  });

  double optimum = 0.0;
  for (const auto& chunk : chunks) optimum = std::max(optimum, chunk.best_value);
  std::vector<CertifiedSolution> solutions;
  for (const auto& chunk : chunks) {
    for (std::size_t e = 0; e < chunk.equilibria.size(); ++e) {
      CertifiedSolution solution;
      solution.kind = SolutionKind::kEquilibrium;
      solution.profile = ProfileAt(chunk.equilibria[e], agents, k);
      solution.value = chunk.values[e];
      solution.ratio_vs_optimal =
          optimum > 0.0 ? chunk.values[e] / optimum : 1.0;
      solutions.push_back(std::move(solution));
    }
  }
  return solutions;
}

}  // namespace submax

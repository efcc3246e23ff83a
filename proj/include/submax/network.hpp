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

#ifndef SUBMAX_NETWORK_HPP_
#define SUBMAX_NETWORK_HPP_

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "submax/multilinear.hpp"
#include "submax/objective.hpp"
#include "submax/optimizer.hpp"

namespace submax {

using EdgeList = std::vector<std::pair<int, int>>;

// Fixed pairwise delays tau_ij (row i = receiver, column j = sender).
struct DelayTopology {
  int num_agents = 0;
  std::vector<int> delays;     // I x I, row-major, zero diagonal
  std::vector<int> distances;  // graph hop counts; empty for explicit delays
  std::string name = "explicit";
  int hop_offset = 0;  // tau = max(distance - hop_offset, 0) off the diagonal

  int delay(int receiver, int sender) const {
    return delays[static_cast<std::size_t>(receiver) * num_agents + sender];
  }
  // D = max tau_ij.
  int bound() const;
  // Largest hop count, or -1 without a graph.
  int max_distance() const;
  // max_distance() - 1, floored at 0: the bound that counts the hop to a
  // neighbour as free. -1 without a graph.
  int operative_bound() const;

  // Throws InvalidArgument.
  void Validate() const;
};

struct EdgeListFile {
  int num_agents = 0;
  EdgeList edges;
};

// BFS hop counts. Throws InvalidArgument if the graph is disconnected or an
// endpoint is out of range.
DelayTopology TopologyFromGraph(int num_agents, const EdgeList& edges,
                                int hop_offset = 0,
                                std::string name = "custom");
DelayTopology TopologyFromMatrix(int num_agents, std::vector<int> delays);
DelayTopology ZeroDelayTopology(int num_agents);

// complete, string (alias path), ring, star, general. "general" is the
// ternary tree where node n > 0 hangs off node (n - 1) / 3.
EdgeList BuiltinEdges(std::string_view name, int num_agents);
DelayTopology BuiltinTopology(std::string_view name, int num_agents,
                              int hop_offset = 0);

// "I" header, then one "u v" pair per line; '#' starts a comment line.
EdgeListFile ReadEdgeList(std::istream& in);
EdgeListFile ReadEdgeListFile(const std::string& path);
void WriteEdgeList(std::ostream& out, const EdgeListFile& file);

enum class Bootstrap {
  kEmpty,         // the sender's slot is kEmpty until its first batch arrives
  kInitialBatch,  // reuse the batch drawn from p^0
};

enum class PublishTiming {
  // The batch drawn from p^{k+1} is available at iteration k+1.
  kAfterUpdate,
  // Batches become available one iteration later than kAfterUpdate.
  kBeforeUpdate,
};

// Ring of the most recent `depth` batches per agent, plus each agent's
// first batch.
class SampleBuffer {
 public:
  SampleBuffer(int num_agents, int sample_size, int depth);

  void Publish(int agent, int iteration, std::span<const int> batch);
  // Throws InvalidArgument if `iteration` was evicted or never published.
  std::span<const int> Lookup(int agent, int iteration) const;
  std::span<const int> Initial(int agent) const;

  int newest() const { return newest_; }
  // Largest newest() - iteration seen by Lookup.
  int max_lag() const { return max_lag_; }

 private:
  int num_agents_;
  int sample_size_;
  int depth_;
  int newest_ = -1;
  mutable int max_lag_ = 0;
  std::vector<int> ring_;     // depth x I x M
  std::vector<int> stamps_;   // depth x I
  std::vector<int> initial_;  // I x M
};

struct ContextSource {
  int iteration = 0;
  int agent = 0;            // receiver
  int sender = 0;
  int source_iteration = -1;  // batch index used, -1 for kEmpty bootstrap
  bool bootstrapped = false;
  std::span<const int> batch;  // the M choices placed in the contexts
};

struct NetworkOptions {
  Bootstrap bootstrap = Bootstrap::kEmpty;
  PublishTiming timing = PublishTiming::kAfterUpdate;
  // Called serially for every (iteration, receiver, sender != receiver).
  std::function<void(const ContextSource&)> observer;
};

RunResult RunAlgorithm2(const ObjectiveOracle& oracle,
                        const ProbabilityProfile& p0, const RunConfig& config,
                        const DelayTopology& topology,
                        const NetworkOptions& options = {});

// True when the last max(bound, 1) profiles round to one vertex profile that
// is an equilibrium. Throws InvalidArgument if the window is shorter.
bool WindowedEquilibriumCheck(std::span<const ProbabilityProfile> window,
                              const ObjectiveOracle& oracle, int bound,
                              double eps_vertex = 1e-9, double eps_eq = 1e-12);

}  // namespace submax

#endif  // SUBMAX_NETWORK_HPP_

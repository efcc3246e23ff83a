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

#include "submax/network.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include <fmt/format.h>

#include "submax/errors.hpp"

namespace submax {

int DelayTopology::bound() const {
  return delays.empty() ? 0 : *std::max_element(delays.begin(), delays.end());
}

int DelayTopology::max_distance() const {
  if (distances.empty()) return -1;
  return *std::max_element(distances.begin(), distances.end());
}

int DelayTopology::operative_bound() const {
  const int d = max_distance();
  return d < 0 ? -1 : std::max(d - 1, 0);
}

void DelayTopology::Validate() const {
  if (num_agents < 1) throw InvalidArgument("topology needs at least one agent");
  const auto cells = static_cast<std::size_t>(num_agents) * num_agents;
  if (delays.size() != cells)
    throw InvalidArgument("delay matrix must be I x I");
  for (int i = 0; i < num_agents; ++i) {
    for (int j = 0; j < num_agents; ++j) {
      const int t = delay(i, j);
      if (t < 0) throw InvalidArgument("delays must be non-negative");
      if (i == j && t != 0) throw InvalidArgument("self delay must be zero");
    }
  }
}

DelayTopology TopologyFromGraph(int num_agents, const EdgeList& edges,
                                int hop_offset, std::string name) {
  if (num_agents < 1) throw InvalidArgument("graph needs at least one node");
  if (hop_offset < 0) throw InvalidArgument("hop offset must be >= 0");
  std::vector<std::vector<int>> adjacency(num_agents);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_agents || v >= num_agents)
      throw InvalidArgument(fmt::format("edge {} {} out of range", u, v));
    if (u == v) continue;
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }
  DelayTopology topo;
  topo.num_agents = num_agents;
  topo.name = std::move(name);
  topo.hop_offset = hop_offset;
  const auto cells = static_cast<std::size_t>(num_agents) * num_agents;
  topo.distances.assign(cells, -1);
  for (int source = 0; source < num_agents; ++source) {
    int* dist = topo.distances.data() + static_cast<std::size_t>(source) * num_agents;
    std::queue<int> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v : adjacency[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          frontier.push(v);
        }
      }
    }
    for (int v = 0; v < num_agents; ++v) {
      if (dist[v] < 0)
        throw InvalidArgument(fmt::format(
            "graph is disconnected: no path from {} to {}", source, v));
    }
  }
  topo.delays.resize(cells);
  for (std::size_t c = 0; c < cells; ++c)
    topo.delays[c] = std::max(topo.distances[c] - hop_offset, 0);
  return topo;
}

DelayTopology TopologyFromMatrix(int num_agents, std::vector<int> delays) {
  DelayTopology topo;
  topo.num_agents = num_agents;
  topo.delays = std::move(delays);
  topo.Validate();
  return topo;
}

DelayTopology ZeroDelayTopology(int num_agents) {
  DelayTopology topo = TopologyFromMatrix(
      num_agents,
      std::vector<int>(static_cast<std::size_t>(num_agents) * num_agents, 0));
  topo.name = "zero";
  return topo;
}

EdgeList BuiltinEdges(std::string_view name, int num_agents) {
  if (num_agents < 1) throw InvalidArgument("graph needs at least one node");
  EdgeList edges;
  if (name == "complete") {
    for (int u = 0; u < num_agents; ++u)
      for (int v = u + 1; v < num_agents; ++v) edges.emplace_back(u, v);
  } else if (name == "string" || name == "path") {
    for (int u = 0; u + 1 < num_agents; ++u) edges.emplace_back(u, u + 1);
  } else if (name == "ring") {
    for (int u = 0; u + 1 < num_agents; ++u) edges.emplace_back(u, u + 1);
    if (num_agents > 2) edges.emplace_back(num_agents - 1, 0);
  } else if (name == "star") {
    for (int v = 1; v < num_agents; ++v) edges.emplace_back(0, v);
  } else if (name == "general") {
    for (int v = 1; v < num_agents; ++v) edges.emplace_back((v - 1) / 3, v);
  } else {
    throw InvalidArgument("unknown topology '" + std::string(name) + "'");
  }
  return edges;
}

DelayTopology BuiltinTopology(std::string_view name, int num_agents,
                              int hop_offset) {
  if (name == "zero") return ZeroDelayTopology(num_agents);
  const std::string label = name == "path" ? "string" : std::string(name);
  return TopologyFromGraph(num_agents, BuiltinEdges(name, num_agents),
                           hop_offset, label);
}

EdgeListFile ReadEdgeList(std::istream& in) {
  EdgeListFile file;
  std::string line;
  int line_number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!have_header) {
      if (!(fields >> file.num_agents) || file.num_agents < 1)
        throw ParseError(fmt::format("line {}: expected agent count", line_number));
      have_header = true;
    } else {
      int u = 0;
      int v = 0;
      if (!(fields >> u >> v))
        throw ParseError(fmt::format("line {}: expected 'u v'", line_number));
      if (u < 0 || v < 0 || u >= file.num_agents || v >= file.num_agents)
        throw ParseError(
            fmt::format("line {}: node id out of range", line_number));
      file.edges.emplace_back(u, v);
    }
    std::string extra;
    if (fields >> extra)
      throw ParseError(fmt::format("line {}: trailing text", line_number));
  }
  if (!have_header) throw ParseError("edge list has no agent count");
  return file;
}

EdgeListFile ReadEdgeListFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open topology file " + path);
  return ReadEdgeList(in);
}

void WriteEdgeList(std::ostream& out, const EdgeListFile& file) {
  out << file.num_agents << '\n';
  for (const auto& [u, v] : file.edges) out << u << ' ' << v << '\n';
}

SampleBuffer::SampleBuffer(int num_agents, int sample_size, int depth)
    : num_agents_(num_agents),
      sample_size_(sample_size),
      depth_(depth),
      ring_(static_cast<std::size_t>(depth) * num_agents * sample_size, kEmpty),
      stamps_(static_cast<std::size_t>(depth) * num_agents, -1),
      initial_(static_cast<std::size_t>(num_agents) * sample_size, kEmpty) {
  if (num_agents < 1 || sample_size < 1 || depth < 1)
    throw InvalidArgument("sample buffer dimensions must be positive");
}

void SampleBuffer::Publish(int agent, int iteration,
                           std::span<const int> batch) {
  if (static_cast<int>(batch.size()) != sample_size_)
    throw InvalidArgument("batch size differs from M");
  const auto slot = static_cast<std::size_t>(iteration % depth_) * num_agents_ + agent;
  std::copy(batch.begin(), batch.end(), ring_.begin() + slot * sample_size_);
  stamps_[slot] = iteration;
  if (iteration == 0)
    std::copy(batch.begin(), batch.end(),
              initial_.begin() + static_cast<std::size_t>(agent) * sample_size_);
  newest_ = std::max(newest_, iteration);
}

std::span<const int> SampleBuffer::Lookup(int agent, int iteration) const {
  if (iteration < 0)
    throw InvalidArgument("negative iteration in sample buffer lookup");
  const auto slot = static_cast<std::size_t>(iteration % depth_) * num_agents_ + agent;
  if (stamps_[slot] != iteration)
    throw InvalidArgument(fmt::format(
        "batch {} of agent {} is not in the buffer", iteration, agent));
  max_lag_ = std::max(max_lag_, newest_ - iteration);
  return {ring_.data() + slot * sample_size_,
          static_cast<std::size_t>(sample_size_)};
}

std::span<const int> SampleBuffer::Initial(int agent) const {
  return {initial_.data() + static_cast<std::size_t>(agent) * sample_size_,
          static_cast<std::size_t>(sample_size_)};
}

RunResult RunAlgorithm2(const ObjectiveOracle& oracle,
                        const ProbabilityProfile& p0, const RunConfig& config,
                        const DelayTopology& topology,
                        const NetworkOptions& options) {
  config.Validate();
  topology.Validate();
  const int agents = oracle.num_agents();
  const int k_strategies = oracle.num_strategies();
  if (topology.num_agents != agents)
    throw InvalidArgument("topology and instance disagree on the agent count");
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
  const int extra = options.timing == PublishTiming::kBeforeUpdate ? 1 : 0;
  const int bound = topology.bound();
  const int window = std::max(bound, 1);
  SampleBuffer buffer(agents, m, bound + extra + 1);

  ProbabilityProfile p = p0;
  ProbabilityProfile next = p0;
  const auto block = static_cast<std::size_t>(m) * agents;
  std::vector<int> fresh(block);
  std::vector<int> contexts(block * agents, kEmpty);
  std::vector<std::span<const int>> per_agent;
  for (int i = 0; i < agents; ++i)
    per_agent.emplace_back(contexts.data() + block * i, block);
  std::vector<int> batch(m);
  const std::vector<int> empty_batch(m, kEmpty);
  std::vector<double> displacement(agents);
  if (config.record_trace) result.trace.profiles.push_back(p);

  std::optional<StrategyProfile> cached_profile;
  std::optional<StrategyProfile> detected;
  int stable = 0;
  int run_start = -1;
  for (int k = 0; k < config.max_iters; ++k) {
    for (int j = 0; j < agents; ++j) {
      DrawBatch(p.row(j), k_strategies, config.seed, j, k, batch);
      buffer.Publish(j, k, batch);
      for (int s = 0; s < m; ++s) fresh[s * agents + j] = batch[s];
    }
    double f_sample = 0.0;
    for (int s = 0; s < m; ++s)
      f_sample += oracle.Value(std::span<const int>(fresh).subspan(
          static_cast<std::size_t>(s) * agents, agents));
    f_sample /= m;

    for (int i = 0; i < agents; ++i) {
      int* ctx = contexts.data() + block * i;
      for (int j = 0; j < agents; ++j) {
        if (j == i) continue;
        const int source = k - topology.delay(i, j) - extra;
        ContextSource info{k, i, j, source, false, {}};
        if (source >= 0) {
          info.batch = buffer.Lookup(j, source);
        } else if (options.bootstrap == Bootstrap::kInitialBatch) {
          info.batch = buffer.Initial(j);
          info.source_iteration = 0;
          info.bootstrapped = true;
        } else {
          info.batch = empty_batch;
          info.source_iteration = -1;
          info.bootstrapped = true;
        }
        for (int s = 0; s < m; ++s) ctx[s * agents + j] = info.batch[s];
        if (options.observer) options.observer(info);
      }
    }

    JacobiStep(oracle, p, per_agent, m, config.gamma, config.execution, {},
               next, displacement);
    std::swap(p, next);

    const auto rounded = RoundToVertices(p, k_strategies, config.eps_vertex);
    if (rounded != cached_profile) {
      cached_profile = rounded;
      detected.reset();
      stable = rounded ? 1 : 0;
      if (rounded && IsEquilibriumProfile(oracle, *rounded, config.eps_eq,
                                          p.width() > k_strategies))
        detected = rounded;
    } else if (rounded) {
      ++stable;
    }
    const bool flag = detected.has_value() && stable >= window;
    run_start = flag ? (run_start < 0 ? k + 1 : run_start) : -1;
    AppendIteration(result.trace, displacement, f_sample, flag);
    if (config.record_trace) result.trace.profiles.push_back(p);
    if (flag && config.stop_on_equilibrium &&
        (k + 1) % config.check_every == 0)
      break;
  }
  const bool final_flag = !result.trace.equilibrium_flag.empty() &&
                          result.trace.equilibrium_flag.back() != 0;
  result.final_profile = std::move(p);
  if (final_flag) result.equilibrium = detected;
  result.equilibrium_iteration = run_start;
  return result;
}

bool WindowedEquilibriumCheck(std::span<const ProbabilityProfile> window,
                              const ObjectiveOracle& oracle, int bound,
                              double eps_vertex, double eps_eq) {
  const auto length = static_cast<std::size_t>(std::max(bound, 1));
  if (window.size() < length)
    throw InvalidArgument(fmt::format(
        "window holds {} profiles, needs {}", window.size(), length));
  const auto tail = window.subspan(window.size() - length);
  const auto first = RoundToVertices(tail[0], oracle.num_strategies(), eps_vertex);
  if (!first) return false;
  for (std::size_t t = 1; t < tail.size(); ++t) {
    if (RoundToVertices(tail[t], oracle.num_strategies(), eps_vertex) != first)
      return false;
  }
  return IsEquilibriumProfile(oracle, *first, eps_eq,
                              tail[0].width() > oracle.num_strategies());
}

}  // namespace submax

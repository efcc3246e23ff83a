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

#ifndef SUBMAX_TESTS_TEST_SUPPORT_HPP_
#define SUBMAX_TESTS_TEST_SUPPORT_HPP_

// Independent reference implementations used as test oracles. None of these
// share code with the library kernels they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "submax/multilinear.hpp"
#include "submax/objective.hpp"
#include "submax/strategy.hpp"

namespace submax::testing {

// |union of the chosen liker sets| via std::set.
inline double NaiveCoverage(const std::vector<std::vector<int>>& sets,
                            const std::vector<int>& choices) {
  std::set<int> covered;
  for (int a : choices) {
    if (a == kEmpty) continue;
    covered.insert(sets[a].begin(), sets[a].end());
  }
  return static_cast<double>(covered.size());
}

inline std::vector<std::vector<int>> RandomSets(std::mt19937_64& gen, int k,
                                                int universe, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<std::vector<int>> sets(k);
  for (auto& set : sets) {
    for (int u = 0; u < universe; ++u) {
      if (coin(gen)) set.push_back(u);
    }
  }
  return sets;
}

inline std::vector<int> RandomChoices(std::mt19937_64& gen, int agents, int k,
                                      bool allow_empty) {
  std::uniform_int_distribution<int> pick(allow_empty ? -1 : 0, k - 1);
  std::vector<int> choices(agents);
  for (int& c : choices) c = pick(gen);
  return choices;
}

inline ProbabilityProfile RandomProfile(std::mt19937_64& gen, int agents,
                                        int width, double zero_chance = 0.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ProbabilityProfile p(agents, width);
  for (int i = 0; i < agents; ++i) {
    auto row = p.row(i);
    double sum = 0.0;
    for (double& v : row) {
      v = unit(gen) < zero_chance ? 0.0 : unit(gen) + 1e-3;
      sum += v;
    }
    if (sum == 0.0) {
      row[0] = 1.0;
      sum = 1.0;
    }
    for (double& v : row) v /= sum;
  }
  return p;
}

// f(P) by recursion over agents, using only Value().
inline double NaiveMultilinear(const ObjectiveOracle& oracle,
                               const ProbabilityProfile& p) {
  const int agents = p.num_agents();
  const int k = oracle.num_strategies();
  std::vector<int> choices(agents, kEmpty);
  std::function<double(int, double)> walk = [&](int i, double weight) {
    if (i == agents) return weight * oracle.Value(choices);
    double total = 0.0;
    for (int a = 0; a < p.width(); ++a) {
      const double w = p.row(i)[a];
      if (w == 0.0) continue;
      choices[i] = a < k ? a : kEmpty;
      total += walk(i + 1, weight * w);
    }
    return total;
  };
  return walk(0, 1.0);
}

// d f / d p_i(a) = f with row i replaced by the unit vector on a.
inline std::vector<double> NaiveGradient(const ObjectiveOracle& oracle,
                                         const ProbabilityProfile& p,
                                         int agent) {
  std::vector<double> grad(p.width());
  for (int a = 0; a < p.width(); ++a) {
    ProbabilityProfile q = p;
    auto row = q.row(agent);
    std::fill(row.begin(), row.end(), 0.0);
    row[a] = 1.0;
    grad[a] = NaiveMultilinear(oracle, q);
  }
  return grad;
}

// Simplex projection by bisection on the threshold lambda.
inline std::vector<double> BisectionProject(const std::vector<double>& v) {
  double lo = *std::min_element(v.begin(), v.end()) - 1.0;
  double hi = *std::max_element(v.begin(), v.end());
  auto mass = [&](double lambda) {
    double s = 0.0;
    for (double x : v) s += std::max(x - lambda, 0.0);
    return s;
  };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) > 1.0 ? lo : hi) = mid;
  }
  std::vector<double> out(v.size());
  for (std::size_t a = 0; a < v.size(); ++a) out[a] = std::max(v[a] - hi, 0.0);
  return out;
}

inline double SquaredNorm(const std::vector<double>& a,
                          const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) s += (a[n] - b[n]) * (a[n] - b[n]);
  return s;
}

class ScopedTempDir {
 public:
  explicit ScopedTempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("submax_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScopedTempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

inline std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void Spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace submax::testing

#endif  // SUBMAX_TESTS_TEST_SUPPORT_HPP_

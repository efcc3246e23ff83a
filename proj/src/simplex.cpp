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

#include "submax/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "submax/errors.hpp"

namespace submax {

void ProjectInto(std::span<const double> v, std::span<double> out,
                 std::vector<double>& scratch) {
  const std::size_t n = v.size();
  if (n == 0) throw InvalidArgument("cannot project an empty vector");
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidArgument("non-finite projection input");
  }
  scratch.assign(v.begin(), v.end());
  std::sort(scratch.begin(), scratch.end(), std::greater<>());

  double cumulative = 0.0;
  double lambda = scratch[0] - 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    cumulative += scratch[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (scratch[j] - candidate > 0.0) lambda = candidate;
  }

  // Entries within rounding of the threshold are zero; otherwise exact ties
  // with the support leave ulp-sized mass behind.
  const double cutoff = 4.0 * static_cast<double>(n) *
                        std::numeric_limits<double>::epsilon() *
                        std::max(1.0, std::abs(scratch[0]));
  double sum = 0.0;
  std::size_t positive = 0;
  std::size_t last = 0;
  for (std::size_t a = 0; a < n; ++a) {
    const double x = v[a] - lambda;
    out[a] = x > cutoff ? x : 0.0;
    if (out[a] > 0.0) {
      ++positive;
      last = a;
    }
    sum += out[a];
  }
  if (positive == 1) {
    std::fill(out.begin(), out.end(), 0.0);
    out[last] = 1.0;
    return;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    for (double& x : out) x /= sum;
  }
}

std::vector<double> Project(std::span<const double> v) {
  std::vector<double> out(v.size());
  std::vector<double> scratch;
  ProjectInto(v, out, scratch);
  return out;
}

std::optional<int> VertexIndex(std::span<const double> p, double tol) {
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] >= 1.0 - tol) return static_cast<int>(a);
  }
  return std::nullopt;
}

std::vector<double> GradientMapping(std::span<const double> g,
                                    std::span<const double> p, double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  if (g.size() != p.size())
    throw InvalidArgument("gradient and point differ in length");
  std::vector<double> moved(p.size());
  for (std::size_t a = 0; a < p.size(); ++a) moved[a] = p[a] + gamma * g[a];
  const auto projected = Project(moved);
  std::vector<double> out(p.size());
  for (std::size_t a = 0; a < p.size(); ++a)
    out[a] = (p[a] - projected[a]) / gamma;
  return out;
}

bool VertexFixedPointCheck(std::span<const double> p,
                           std::span<const double> delta, double tol) {
  if (p.size() != delta.size() || p.empty()) return false;
  bool have_level = false;
  double level = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] <= 0.0) continue;
    if (!have_level) {
      level = delta[a];
      have_level = true;
    } else if (std::abs(delta[a] - level) > tol) {
      return false;
    }
  }
  if (!have_level) return false;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] <= 0.0 && delta[a] > level + tol) return false;
  }
  return true;
}

}  // namespace submax

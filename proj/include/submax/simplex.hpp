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

#ifndef SUBMAX_SIMPLEX_HPP_
#define SUBMAX_SIMPLEX_HPP_

#include <optional>
#include <span>
#include <vector>

namespace submax {

// Euclidean projection of v onto {x >= 0, sum x = 1}. Throws
// InvalidArgument on non-finite input. A result with a single positive
// entry is returned as the exact unit vector.
std::vector<double> Project(std::span<const double> v);

// Allocation-free form for hot loops. `out` has v.size() entries and may
// alias v; `scratch` is resized as needed.
void ProjectInto(std::span<const double> v, std::span<double> out,
                 std::vector<double>& scratch);

// Index of the entry >= 1 - tol, if any.
std::optional<int> VertexIndex(std::span<const double> p, double tol = 1e-9);
inline bool IsVertex(std::span<const double> p, double tol = 1e-9) {
  return VertexIndex(p, tol).has_value();
}

// (p - Project(p + gamma * g)) / gamma. Throws InvalidArgument if
// gamma <= 0.
std::vector<double> GradientMapping(std::span<const double> g,
                                    std::span<const double> p, double gamma);

// Whether p == Project(p + delta), decided without projecting: delta must be
// constant on the support of p and no larger than that constant elsewhere.
// For a vertex this reduces to delta attaining its maximum at the vertex.
bool VertexFixedPointCheck(std::span<const double> p,
                           std::span<const double> delta, double tol = 1e-12);

}  // namespace submax

#endif  // SUBMAX_SIMPLEX_HPP_

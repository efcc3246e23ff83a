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

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "submax/errors.hpp"
#include "submax/simplex.hpp"
#include "test_support.hpp"

namespace submax {
namespace {

using testing::BisectionProject;
using testing::SquaredNorm;

double Sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

TEST(ProjectTest, SimplexPointIsUnchanged) {
  const std::vector<double> v{0.2, 0.3, 0.5};
  const auto p = Project(v);
  for (int a = 0; a < 3; ++a) EXPECT_NEAR(p[a], v[a], 1e-15);
}

TEST(ProjectTest, HandExamples) {
  EXPECT_EQ(Project(std::vector<double>{2.0, 0.0}), (std::vector<double>{1.0, 0.0}));
  const auto even = Project(std::vector<double>{0.0, 0.0, 0.0, 0.0});
  for (double x : even) EXPECT_DOUBLE_EQ(x, 0.25);
  const auto shifted = Project(std::vector<double>{1.0, 0.5, -3.0});
  EXPECT_NEAR(shifted[0], 0.75, 1e-15);
  EXPECT_NEAR(shifted[1], 0.25, 1e-15);
  EXPECT_EQ(shifted[2], 0.0);
}

TEST(ProjectTest, SingleSupportIsExactVertex) {
  const auto p = Project(std::vector<double>{0.1, 5.0, 0.3, -1.0});
  EXPECT_EQ(p, (std::vector<double>{0.0, 1.0, 0.0, 0.0}));
  EXPECT_EQ(VertexIndex(p, 0.0), 1);
}

TEST(ProjectTest, TiedGradientKeepsExactVertex) {
  for (int denominator = 1; denominator < 200; ++denominator) {
    const double gamma = 1.0 / denominator;
    const std::vector<double> moved{gamma * 3.0, 1.0 + gamma * 3.0, gamma * 3.0,
                                    gamma * 1.0};
    EXPECT_EQ(Project(moved), (std::vector<double>{0.0, 1.0, 0.0, 0.0})) << denominator;
  }
}

TEST(ProjectTest, RejectsBadInput) {
  EXPECT_THROW(Project(std::vector<double>{}), InvalidArgument);
  EXPECT_THROW(Project(std::vector<double>{1.0, std::nan("")}), InvalidArgument);
  EXPECT_THROW(Project(std::vector<double>{1.0, HUGE_VAL}), InvalidArgument);
}

TEST(ProjectTest, AgreesWithBisection) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> normal(0.0, 3.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + trial % 60;
    std::vector<double> v(n);
    for (double& x : v) x = normal(gen);
    const auto p = Project(v);
    const auto reference = BisectionProject(v);
    for (int a = 0; a < n; ++a) EXPECT_NEAR(p[a], reference[a], 1e-9);
  }
}

TEST(ProjectTest, FeasibleIdempotentAndNearest) {
  std::mt19937_64 gen(2);
  std::normal_distribution<double> normal(0.0, 2.0);
  std::exponential_distribution<double> expo(1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 20;
    std::vector<double> v(n);
    for (double& x : v) x = normal(gen);
    const auto p = Project(v);
    EXPECT_NEAR(Sum(p), 1.0, 1e-12);
    for (double x : p) EXPECT_GE(x, 0.0);
    const auto again = Project(p);
    for (int a = 0; a < n; ++a) EXPECT_NEAR(again[a], p[a], 1e-12);
    const double best = SquaredNorm(p, v);
    for (int c = 0; c < 50; ++c) {
      std::vector<double> q(n);
      for (double& x : q) x = expo(gen);
      const double s = Sum(q);
      for (double& x : q) x /= s;
      EXPECT_LE(best, SquaredNorm(q, v) + 1e-12);
    }
  }
}

TEST(ProjectTest, TranslationInvariance) {
  const std::vector<double> v{0.3, -0.2, 1.4, 0.9};
  std::vector<double> shifted = v;
  for (double& x : shifted) x += 7.0;
  const auto a = Project(v);
  const auto b = Project(shifted);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
}

TEST(VertexIndexTest, Tolerance) {
  const std::vector<double> near{1e-10, 1.0 - 1e-10};
  EXPECT_EQ(VertexIndex(near), 1);
  EXPECT_FALSE(VertexIndex(near, 0.0).has_value());
  EXPECT_FALSE(IsVertex(std::vector<double>{0.5, 0.5}));
}

TEST(GradientMappingTest, ZeroAtInteriorStationaryPoint) {
  const std::vector<double> p{0.25, 0.25, 0.5};
  const std::vector<double> g{2.0, 2.0, 2.0};
  for (double x : GradientMapping(g, p, 0.3)) EXPECT_NEAR(x, 0.0, 1e-15);
}

TEST(GradientMappingTest, NonZeroWhenMovable) {
  const std::vector<double> p{0.5, 0.5};
  const std::vector<double> g{1.0, 0.0};
  const auto mapping = GradientMapping(g, p, 0.1);
  EXPECT_NEAR(mapping[0], -0.5, 1e-12);
  EXPECT_NEAR(mapping[1], 0.5, 1e-12);
}

TEST(GradientMappingTest, RejectsBadGamma) {
  const std::vector<double> p{0.5, 0.5};
  EXPECT_THROW(GradientMapping(p, p, 0.0), InvalidArgument);
  EXPECT_THROW(GradientMapping(p, std::vector<double>{1.0}, 0.1), InvalidArgument);
}

TEST(VertexFixedPointCheckTest, VertexWithDominantGradient) {
  const std::vector<double> p{0.0, 1.0, 0.0};
  EXPECT_TRUE(VertexFixedPointCheck(p, std::vector<double>{1.0, 3.0, 3.0}));
  EXPECT_FALSE(VertexFixedPointCheck(p, std::vector<double>{1.0, 3.0, 3.5}));
}

TEST(VertexFixedPointCheckTest, AgreesWithProjection) {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int> small(0, 3);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<double> p(n, 0.0);
    // Supports of size 1 or 2 with integer gradients to create exact ties.
    const int a = trial % n;
    const int b = (a + 1 + trial / n) % n;
    if (trial % 2 == 0 || a == b) {
      p[a] = 1.0;
    } else {
      p[a] = 0.5;
      p[b] = 0.5;
    }
    std::vector<double> delta(n);
    for (double& d : delta) d = small(gen);
    std::vector<double> moved(n);
    for (int c = 0; c < n; ++c) moved[c] = p[c] + 0.25 * delta[c];
    const auto projected = Project(moved);
    bool fixed = true;
    for (int c = 0; c < n; ++c) fixed = fixed && std::abs(projected[c] - p[c]) < 1e-12;
    EXPECT_EQ(VertexFixedPointCheck(p, delta), fixed);
  }
}

}  // namespace
}  // namespace submax

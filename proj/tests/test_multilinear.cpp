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

#include <random>

#include "submax/errors.hpp"
#include "submax/multilinear.hpp"
#include "submax/objective.hpp"
#include "submax/rng.hpp"
#include "test_support.hpp"

namespace submax {
namespace {

using testing::NaiveGradient;
using testing::NaiveMultilinear;
using testing::RandomProfile;
using testing::RandomSets;

TEST(ProbabilityProfileTest, UniformRowsAreValid) {
  const auto p = ProbabilityProfile::Uniform(3, 4);
  EXPECT_NO_THROW(p.Validate());
  for (double v : p.row(2)) EXPECT_EQ(v, 0.25);
}

TEST(ProbabilityProfileTest, FromVerticesMapsEmptyToLastColumn) {
  const auto p = ProbabilityProfile::FromVertices(StrategyProfile({1, kEmpty}), 3, 2);
  EXPECT_EQ(p.row(0)[1], 1.0);
  EXPECT_EQ(p.row(1)[2], 1.0);
  EXPECT_THROW(ProbabilityProfile::FromVertices(StrategyProfile({kEmpty}), 2, 2),
               InvalidArgument);
}

TEST(ProbabilityProfileTest, ValidateRejectsBadRows) {
  ProbabilityProfile p(1, 2);
  p.row(0)[0] = 0.7;
  p.row(0)[1] = 0.2;
  EXPECT_THROW(p.Validate(), InvalidArgument);
  p.row(0)[1] = 0.3;
  EXPECT_NO_THROW(p.Validate());
  p.row(0)[0] = -0.1;
  p.row(0)[1] = 1.1;
  EXPECT_THROW(p.Validate(), InvalidArgument);
}

TEST(EvalExactTest, VertexProfileEqualsF) {
  const CoverageObjective objective(2, 3, {{0, 1}, {1, 2}});
  const auto p = ProbabilityProfile::FromVertices(StrategyProfile({0, 1}), 2, 2);
  EXPECT_EQ(EvalExact(objective, p), 3.0);
}

TEST(EvalExactTest, UniformTwoByTwoByHand) {
  // Profiles (0,0),(0,1),(1,0),(1,1) have values 2,3,3,2.
  const CoverageObjective objective(2, 3, {{0, 1}, {1, 2}});
  EXPECT_DOUBLE_EQ(EvalExact(objective, ProbabilityProfile::Uniform(2, 2)), 2.5);
}

TEST(EvalExactTest, MatchesRecursiveReference) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int agents = 1 + trial % 4;
    const int k = 2 + trial % 3;
    const CoverageObjective objective(agents, 25, RandomSets(gen, k, 25, 0.3));
    const int width = trial % 2 == 0 ? k : k + 1;
    const auto p = RandomProfile(gen, agents, width, 0.2);
    EXPECT_NEAR(EvalExact(objective, p), NaiveMultilinear(objective, p), 1e-10);
  }
}

TEST(EvalExactTest, RespectsLimit) {
  const CoverageObjective objective(8, 4, std::vector<std::vector<int>>(6, {0}));
  EXPECT_THROW(EvalExact(objective, ProbabilityProfile::Uniform(8, 6), 1000),
               LimitExceeded);
}

TEST(FullGradientTest, MatchesUnitRowSubstitution) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 10; ++trial) {
    const CoverageObjective objective(3, 20, RandomSets(gen, 4, 20, 0.3));
    const int width = trial % 2 == 0 ? 4 : 5;
    const auto p = RandomProfile(gen, 3, width, 0.1);
    for (int agent = 0; agent < 3; ++agent) {
      const auto block = FullGradient(objective, p, agent);
      EXPECT_EQ(block.kind, GradientKind::kFull);
      const auto expected = NaiveGradient(objective, p, agent);
      for (int a = 0; a < width; ++a) EXPECT_NEAR(block.values[a], expected[a], 1e-10);
    }
  }
}

TEST(FullGradientTest, MultilinearIdentity) {
  std::mt19937_64 gen(9);
  const CoverageObjective objective(4, 30, RandomSets(gen, 5, 30, 0.2));
  const auto p = RandomProfile(gen, 4, 5);
  const double f = EvalExact(objective, p);
  for (int agent = 0; agent < 4; ++agent) {
    const auto block = FullGradient(objective, p, agent);
    double inner = 0.0;
    for (int a = 0; a < 5; ++a) inner += p.row(agent)[a] * block.values[a];
    EXPECT_NEAR(f, inner, 1e-9);
  }
}

TEST(FullGradientTest, SingleAgentGradientIsValueTable) {
  const CoverageObjective objective(1, 5, {{0}, {1, 2}, {0, 3, 4}});
  const auto block = FullGradient(objective, ProbabilityProfile::Uniform(1, 3), 0);
  EXPECT_EQ(block.values, (std::vector<double>{1.0, 2.0, 3.0}));
}

TEST(SampleStrategyTest, NeverReturnsZeroMassColumn) {
  StreamRng rng(123);
  const std::vector<double> row{0.0, 0.5, 0.0, 0.5, 0.0};
  for (int n = 0; n < 5000; ++n) {
    const int a = SampleStrategy(row, rng);
    EXPECT_TRUE(a == 1 || a == 3);
  }
}

TEST(SampleStrategyTest, VertexRowIsDeterministic) {
  StreamRng rng(5);
  const std::vector<double> row{0.0, 0.0, 1.0};
  for (int n = 0; n < 100; ++n) EXPECT_EQ(SampleStrategy(row, rng), 2);
}

TEST(SampleStrategyTest, RejectsRowWithoutMass) {
  StreamRng rng(5);
  const std::vector<double> row{0.0, 0.0};
  EXPECT_THROW(SampleStrategy(row, rng), InvalidArgument);
}

TEST(SampleStrategyTest, FrequenciesMatchProbabilities) {
  StreamRng rng(77);
  const std::vector<double> row{0.1, 0.2, 0.3, 0.4};
  std::vector<int> counts(4, 0);
  const int n = 200000;
  for (int s = 0; s < n; ++s) ++counts[SampleStrategy(row, rng)];
  for (int a = 0; a < 4; ++a) {
    const double se = std::sqrt(row[a] * (1 - row[a]) / n);
    EXPECT_NEAR(counts[a] / static_cast<double>(n), row[a], 5 * se);
  }
}

TEST(StochasticGradientTest, SharedContextsAndShape) {
  std::mt19937_64 gen(4);
  const CoverageObjective objective(3, 20, RandomSets(gen, 4, 20, 0.3));
  const auto p = RandomProfile(gen, 3, 4);
  StreamRng rng(1);
  const auto block = StochasticGradient(objective, p, 1, 6, rng);
  EXPECT_EQ(block.kind, GradientKind::kSampled);
  EXPECT_EQ(block.sample_size, 6);
  ASSERT_EQ(block.samples.size(), 6u);
  // Recompute the mean from the recorded contexts.
  std::vector<double> expected(4, 0.0);
  for (const auto& context : block.samples) {
    EXPECT_EQ(context[1], kEmpty);
    for (int a = 0; a < 4; ++a) {
      auto full = context;
      full[1] = a;
      expected[a] += Evaluate(objective, full) / 6.0;
    }
  }
  for (int a = 0; a < 4; ++a) EXPECT_NEAR(block.values[a], expected[a], 1e-12);
}

TEST(StochasticGradientTest, VertexContextsMakeItExact) {
  const CoverageObjective objective(2, 3, {{0, 1}, {1, 2}});
  const auto p = ProbabilityProfile::FromVertices(StrategyProfile({0, 1}), 2, 2);
  StreamRng rng(3);
  const auto sampled = StochasticGradient(objective, p, 0, 3, rng);
  const auto exact = FullGradient(objective, p, 0);
  EXPECT_EQ(sampled.values, exact.values);
}

TEST(StochasticGradientTest, RejectsBadArguments) {
  const CoverageObjective objective(2, 3, {{0, 1}, {1, 2}});
  const auto p = ProbabilityProfile::Uniform(2, 2);
  StreamRng rng(3);
  EXPECT_THROW(StochasticGradient(objective, p, 0, 0, rng), InvalidArgument);
  EXPECT_THROW(StochasticGradient(objective, p, 2, 1, rng), InvalidArgument);
  EXPECT_THROW(FullGradient(objective, ProbabilityProfile::Uniform(3, 2), 0),
               InvalidArgument);
}

TEST(StochasticGradientTest, MeanConvergesToFullGradient) {
  std::mt19937_64 gen(10);
  const CoverageObjective objective(3, 30, RandomSets(gen, 4, 30, 0.25));
  const auto p = RandomProfile(gen, 3, 4);
  const auto exact = FullGradient(objective, p, 2);
  StreamRng rng(99);
  const int draws = 20000;
  std::vector<double> sum(4, 0.0), sum_sq(4, 0.0);
  for (int n = 0; n < draws; ++n) {
    const auto block = StochasticGradient(objective, p, 2, 1, rng);
    for (int a = 0; a < 4; ++a) {
      sum[a] += block.values[a];
      sum_sq[a] += block.values[a] * block.values[a];
    }
  }
  for (int a = 0; a < 4; ++a) {
    const double mean = sum[a] / draws;
    const double var = sum_sq[a] / draws - mean * mean;
    EXPECT_NEAR(mean, exact.values[a], 4 * std::sqrt(var / draws) + 1e-12);
  }
}

}  // namespace
}  // namespace submax

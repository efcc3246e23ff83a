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

#include <json.hpp>

#include <sstream>

#include "submax/cli.hpp"
#include "submax/errors.hpp"
#include "submax/ingest.hpp"
#include "test_support.hpp"

namespace submax {
namespace {

using testing::ScopedTempDir;
using testing::Slurp;
using testing::Spit;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult Invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    instance_ = dir_.file("inst.txt");
    WriteInstanceFile(instance_, SynthInstance(4, 5, 30, 0.2, 7));
  }

  std::vector<std::string> RunArgs(const std::string& out) const {
    return {"run", "--instance", instance_, "--seed", "3", "--iters", "200", "--out", out};
  }

  int CountLines(const std::string& text) const {
    return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
  }

  ScopedTempDir dir_{"cli"};
  std::string instance_;
};

TEST(ManifestTest, TextRoundTrip) {
  Manifest m;
  m.instance = "a/b.txt";
  m.gamma = "0.125";
  m.seed = 18446744073709551615ULL;
  m.eps_eq = 1e-7;
  m.topology = "string,general";
  m.include_empty = true;
  const auto back = Manifest::FromText(m.ToText());
  EXPECT_EQ(back, m);
  EXPECT_EQ(back.Hash(), m.Hash());
  Manifest other = m;
  other.seed = 1;
  EXPECT_NE(other.Hash(), m.Hash());
  EXPECT_EQ(m.HashHex().size(), 16u);
}

TEST(ManifestTest, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(Manifest::FromText("colour = red\n"), Error);
  EXPECT_THROW(Manifest::FromText("iters = many\n"), Error);
  Manifest m;
  m.instance = "x";
  m.algorithm = "alg3";
  EXPECT_THROW(m.Validate(), InvalidArgument);
}

TEST(ConfigTextTest, CommentsAndWhitespace) {
  const auto entries = ParseConfigText("# comment\n seed = 4 \n\nalg=alg2\n");
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0], (std::pair<std::string, std::string>{"seed", "4"}));
  EXPECT_EQ(entries[1], (std::pair<std::string, std::string>{"alg", "alg2"}));
  EXPECT_THROW(ParseConfigText("novalue\n"), ParseError);
}

TEST(Fnv1aTest, KnownVectors) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST_F(CliTest, RunWritesTraceAndResult) {
  const auto out = dir_.file("run");
  const auto r = Invoke(RunArgs(out));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto trace = Slurp(out + "/trace.csv");
  EXPECT_EQ(trace.rfind("iter,J_k,sum_sq_displacement,f_sample,equilibrium_flag\n", 0), 0u);
  EXPECT_EQ(CountLines(trace), 201);
  const auto result = nlohmann::json::parse(Slurp(out + "/result.json"));
  EXPECT_EQ(result["iterations"], 200);
  EXPECT_EQ(result["algorithm"], "alg1");
  EXPECT_EQ(result["gamma_rule"].get<std::string>().empty(), false);
  const auto manifest = Manifest::FromText(Slurp(out + "/manifest.cfg"));
  EXPECT_EQ(result["manifest_hash"], manifest.HashHex());
  EXPECT_EQ(manifest.seed, 3u);
}

TEST_F(CliTest, RunIsDeterministic) {
  ASSERT_EQ(Invoke(RunArgs(dir_.file("a"))).code, kExitOk);
  ASSERT_EQ(Invoke(RunArgs(dir_.file("b"))).code, kExitOk);
  EXPECT_EQ(Slurp(dir_.file("a/trace.csv")), Slurp(dir_.file("b/trace.csv")));
  auto other = RunArgs(dir_.file("c"));
  other[4] = "4";
  ASSERT_EQ(Invoke(other).code, kExitOk);
  EXPECT_NE(Slurp(dir_.file("a/trace.csv")), Slurp(dir_.file("c/trace.csv")));
}

TEST_F(CliTest, ZeroDelayNetworkMatchesAlgorithm1) {
  ASSERT_EQ(Invoke(RunArgs(dir_.file("a1"))).code, kExitOk);
  auto args = RunArgs(dir_.file("a2"));
  args.insert(args.end(), {"--alg", "alg2", "--topology", "zero"});
  ASSERT_EQ(Invoke(args).code, kExitOk);
  EXPECT_EQ(Slurp(dir_.file("a1/trace.csv")), Slurp(dir_.file("a2/trace.csv")));
}

TEST_F(CliTest, ConfigFileAndOverride) {
  const auto cfg = dir_.file("run.cfg");
  Spit(cfg, "instance = " + instance_ + "\nseed = 3\niters = 200\nrecord-trace = true\n");
  const std::vector<std::string> args{"run", "--config", cfg, "--out", dir_.file("cfg")};
  ASSERT_EQ(Invoke(args).code, kExitOk);
  ASSERT_EQ(Invoke(RunArgs(dir_.file("flags"))).code, kExitOk);
  EXPECT_EQ(Slurp(dir_.file("cfg/trace.csv")), Slurp(dir_.file("flags/trace.csv")));
  EXPECT_FALSE(Slurp(dir_.file("cfg/probs.csv")).empty());

  // The written manifest reproduces the run.
  const std::vector<std::string> replay{"run", "--config", dir_.file("cfg/manifest.cfg"),
                                        "--out", dir_.file("replay")};
  ASSERT_EQ(Invoke(replay).code, kExitOk);
  EXPECT_EQ(Slurp(dir_.file("cfg/trace.csv")), Slurp(dir_.file("replay/trace.csv")));

  const std::vector<std::string> override_args{"run", "--config", cfg, "--iters", "50",
                                               "--out", dir_.file("ovr")};
  ASSERT_EQ(Invoke(override_args).code, kExitOk);
  EXPECT_EQ(CountLines(Slurp(dir_.file("ovr/trace.csv"))), 51);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"bogus"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"run"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"ingest", "--out", dir_.file("x.txt")}).code, kExitUsage);
  EXPECT_EQ(Invoke({"run", "--instance", instance_, "--gamma", "-1", "--out", dir_.file("g")}).code,
            kExitValidation);
  EXPECT_EQ(Invoke({"run", "--instance", dir_.file("missing.txt"), "--out", dir_.file("m")}).code,
            kExitValidation);
  Spit(dir_.file("broken.txt"), "2 2 3\n0 1\n");
  EXPECT_EQ(Invoke({"run", "--instance", dir_.file("broken.txt"), "--out", dir_.file("b")}).code,
            kExitValidation);
  EXPECT_EQ(Invoke({"run", "--help"}).code, kExitOk);
}

TEST_F(CliTest, IngestSynthMatchesLibrary) {
  const auto path = dir_.file("synth.txt");
  const auto r = Invoke({"ingest", "--synth", "I=4,K=5,U=30,d=0.2", "--seed", "7", "--out", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(Slurp(path), Slurp(instance_));
  const auto to_stdout = Invoke({"ingest", "--synth", "I=4,K=5,U=30,d=0.2", "--seed", "7"});
  EXPECT_EQ(to_stdout.out, Slurp(instance_));
}

TEST_F(CliTest, IngestRatings) {
  const auto ratings = dir_.file("ratings.csv");
  Spit(ratings,
       "userId,movieId,rating\n1,10,4\n2,10,5\n3,20,4\n1,20,1\nbad,row\n");
  const auto path = dir_.file("movies.txt");
  const auto map = dir_.file("map.csv");
  const auto r = Invoke({"ingest", "--ratings", ratings, "--min-likers", "1", "--agents", "2",
                      "--out", path, "--candidates", map});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto objective = ReadInstanceFile(path);
  EXPECT_EQ(objective.num_agents(), 2);
  EXPECT_EQ(objective.num_strategies(), 2);
  EXPECT_EQ(Slurp(map), "strategy,movie_id,likers\n0,10,2\n1,20,1\n");
  EXPECT_EQ(Invoke({"ingest", "--ratings", ratings, "--min-likers", "9", "--out", path}).code,
            kExitValidation);
}

TEST_F(CliTest, VerifyAndBaseline) {
  const auto out = dir_.file("v");
  auto args = RunArgs(out);
  args.insert(args.end(), {"--iters", "2000", "--stop-on-equilibrium"});
  ASSERT_EQ(Invoke(args).code, kExitOk);
  const auto verify = Invoke({"verify", "--instance", instance_, "--result", out + "/result.json"});
  ASSERT_EQ(verify.code, kExitOk) << verify.err;
  const auto report = nlohmann::json::parse(verify.out);
  EXPECT_TRUE(report["feasible"].get<bool>());
  EXPECT_TRUE(report["equilibrium"].get<bool>());
  EXPECT_TRUE(report["half_bound_met"].get<bool>());
  EXPECT_EQ(report["reference"], "brute_force");

  const auto profile = Invoke({"verify", "--instance", instance_, "--profile", "0,-,1,2"});
  ASSERT_EQ(profile.code, kExitOk) << profile.err;
  EXPECT_EQ(Invoke({"verify", "--instance", instance_, "--profile", "0,1"}).code,
            kExitValidation);
  EXPECT_EQ(Invoke({"verify", "--instance", instance_, "--profile", "0,1,2,9"}).code,
            kExitValidation);

  const auto greedy = Invoke({"baseline", "--instance", instance_, "--method", "greedy"});
  ASSERT_EQ(greedy.code, kExitOk) << greedy.err;
  const auto brute = Invoke({"baseline", "--instance", instance_, "--method", "brute-force"});
  ASSERT_EQ(brute.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(brute.out)["value"], 18.0);
  const auto eq = Invoke({"baseline", "--instance", instance_, "--method", "equilibria"});
  ASSERT_EQ(eq.code, kExitOk);
  EXPECT_EQ(Invoke({"baseline", "--instance", instance_, "--method", "magic"}).code,
            kExitValidation);
}

TEST_F(CliTest, MonteCarloSingleTrialMeanIsTheTrial) {
  const auto out = dir_.file("mc");
  const auto r = Invoke({"montecarlo", "--instance", instance_, "--alg", "alg2", "--topology",
                      "complete,string", "--trials", "1", "--iters", "100", "--seed", "5",
                      "--out", out});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream trial_csv(Slurp(out + "/string/trial_000.csv"));
  std::istringstream mean_csv(Slurp(out + "/jk_mean.csv"));
  std::string trial_line, mean_line;
  std::getline(trial_csv, trial_line);
  std::getline(mean_csv, mean_line);
  EXPECT_EQ(mean_line, "iter,complete,string");
  int rows = 0;
  while (std::getline(trial_csv, trial_line) && std::getline(mean_csv, mean_line)) {
    ++rows;
    const auto trial_jk = trial_line.substr(trial_line.find(',') + 1);
    EXPECT_EQ(mean_line.substr(mean_line.rfind(',') + 1),
              trial_jk.substr(0, trial_jk.find(',')));
  }
  EXPECT_EQ(rows, 100);
  const auto summary = nlohmann::json::parse(Slurp(out + "/summary.json"));
  EXPECT_EQ(summary["trials"], 1);
  EXPECT_TRUE(summary["runs"].contains("string"));
  EXPECT_EQ(summary["manifest_hash"],
            Manifest::FromText(Slurp(out + "/manifest.cfg")).HashHex());
}

}  // namespace
}  // namespace submax

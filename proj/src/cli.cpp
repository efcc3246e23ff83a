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

#include "submax/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "submax/baselines.hpp"
#include "submax/errors.hpp"
#include "submax/ingest.hpp"
#include "submax/multilinear.hpp"
#include "submax/network.hpp"
#include "submax/objective.hpp"
#include "submax/optimizer.hpp"
#include "submax/rng.hpp"

namespace submax {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string Bool(bool b) { return b ? "true" : "false"; }

bool ParseBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ParseError(key + ": expected true or false, got '" + value + "'");
}

template <typename T>
T ParseValue(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T parsed{};
  if (!(in >> parsed) || !(in >> std::ws).eof())
    throw ParseError(key + ": cannot parse '" + value + "'");
  return parsed;
}

std::string ReadWholeFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const fs::path& path,
               const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  body(out);
  if (!out) throw Error("write failed for " + path.string());
}

bool IsBuiltinTopology(std::string_view name) {
  return name == "complete" || name == "string" || name == "path" ||
         name == "ring" || name == "star" || name == "general" ||
         name == "zero";
}

DelayTopology LoadTopology(const std::string& source, int agents,
                           int hop_offset) {
  if (IsBuiltinTopology(source)) return BuiltinTopology(source, agents, hop_offset);
  const EdgeListFile file = ReadEdgeListFile(source);
  if (file.num_agents != agents)
    throw InvalidArgument(fmt::format("topology {} has {} nodes, instance has {}",
                                      source, file.num_agents, agents));
  return TopologyFromGraph(agents, file.edges, hop_offset,
                           fs::path(source).stem().string());
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

Json TopologyJson(const DelayTopology& topo) {
  Json delays = Json::array();
  for (int i = 0; i < topo.num_agents; ++i) {
    Json row = Json::array();
    for (int j = 0; j < topo.num_agents; ++j) row.push_back(topo.delay(i, j));
    delays.push_back(row);
  }
  Json j;
  j["name"] = topo.name;
  j["bound"] = topo.bound();
  j["max_distance"] = topo.max_distance();
  j["operative_bound"] = topo.operative_bound();
  j["hop_offset"] = topo.hop_offset;
  j["delays"] = delays;
  return j;
}

// Lowest-index argmax of every row, mapped to choices.
StrategyProfile ArgmaxProfile(const ProbabilityProfile& p, int num_strategies) {
  StrategyProfile profile(std::vector<int>(p.num_agents(), kEmpty));
  for (int i = 0; i < p.num_agents(); ++i) {
    const auto row = p.row(i);
    const auto best = std::max_element(row.begin(), row.end()) - row.begin();
    profile[i] = ChoiceForColumn(static_cast<int>(best), num_strategies);
  }
  return profile;
}

Json ProfileJson(const StrategyProfile& profile) {
  return Json(std::vector<int>(profile.choices().begin(), profile.choices().end()));
}

struct ResolvedRun {
  RunConfig config;
  DeltaMaxEstimate delta;
  std::string gamma_rule;
};

ResolvedRun Resolve(const Manifest& m, const ObjectiveOracle& oracle) {
  ResolvedRun r;
  r.delta = DeltaMaxSampled(oracle, 1000, m.seed);
  if (m.gamma == "auto") {
    r.config.gamma = DefaultStepSize(oracle, m.seed);
    r.gamma_rule = "auto";
  } else {
    r.config.gamma = ParseValue<double>("gamma", m.gamma);
    r.gamma_rule = "fixed";
  }
  if (!r.delta.degenerate()) r.config.delta_max = r.delta.value;
  r.config.sample_size = m.sample_size;
  r.config.max_iters = m.iters;
  r.config.seed = m.seed;
  r.config.eps_vertex = m.eps_vertex;
  r.config.eps_eq = m.eps_eq;
  r.config.stop_on_equilibrium = m.stop_on_equilibrium;
  r.config.check_every = m.check_every;
  r.config.record_trace = m.record_trace;
  r.config.Validate();
  return r;
}

NetworkOptions NetworkOptionsFor(const Manifest& m) {
  NetworkOptions options;
  options.bootstrap =
      m.bootstrap == "initial" ? Bootstrap::kInitialBatch : Bootstrap::kEmpty;
  options.timing = m.publish == "before" ? PublishTiming::kBeforeUpdate
                                         : PublishTiming::kAfterUpdate;
  return options;
}

void AddManifestOptions(CLI::App* cmd, Manifest& m, std::string& config) {
  cmd->add_option("--config", config, "Flat key = value file; flags override it");
  cmd->add_option("--schema-version", m.schema_version, "Manifest schema version");
  cmd->add_option("--instance", m.instance, "Instance file")->required();
  cmd->add_option("--alg", m.algorithm, "alg1 or alg2");
  cmd->add_option("--gamma", m.gamma, "Step size, or 'auto' for 1/delta_max");
  cmd->add_option("--M", m.sample_size, "Sample size");
  cmd->add_option("--iters", m.iters, "Iterations");
  cmd->add_option("--seed", m.seed, "Seed");
  cmd->add_option("--eps-vertex", m.eps_vertex, "Vertex tolerance");
  cmd->add_option("--eps-eq", m.eps_eq, "Equilibrium tolerance");
  cmd->add_flag("--stop-on-equilibrium", m.stop_on_equilibrium,
                "Stop once an equilibrium is detected");
  cmd->add_option("--check-every", m.check_every, "Stop-check period");
  cmd->add_flag("--record-trace", m.record_trace, "Write probs.csv");
  cmd->add_flag("--include-empty", m.include_empty,
                "Let agents place mass on abstaining");
  cmd->add_option("--topology", m.topology,
                  "complete|string|ring|star|general|zero or an edge-list file");
  cmd->add_option("--hop-offset", m.hop_offset,
                  "Delay = max(hops - offset, 0)");
  cmd->add_option("--bootstrap", m.bootstrap, "empty or initial");
  cmd->add_option("--publish", m.publish, "after or before");
  cmd->add_option("--trials", m.trials, "Monte-Carlo trials");
  cmd->add_option("--out", m.out, "Output directory");
}

int CmdRun(const Manifest& m, std::ostream& out, std::ostream& err) {
  m.Validate();
  if (m.trials != 1) throw InvalidArgument("run takes a single trial");
  const CoverageObjective base = ReadInstanceFile(m.instance);
  const ResolvedRun resolved = Resolve(m, base);
  const int width = base.num_strategies() + (m.include_empty ? 1 : 0);
  const auto p0 = ProbabilityProfile::Uniform(base.num_agents(), width);

  RunResult result;
  std::optional<DelayTopology> topology;
  if (m.algorithm == "alg1") {
    result = RunAlgorithm1(base, p0, resolved.config);
  } else {
    topology = LoadTopology(m.topology, base.num_agents(), m.hop_offset);
    result = RunAlgorithm2(base, p0, resolved.config, *topology,
                           NetworkOptionsFor(m));
  }

  const fs::path dir(m.out);
  fs::create_directories(dir);
  WriteFile(dir / "trace.csv",
            [&](std::ostream& o) { WriteTraceCsv(o, result.trace); });
  if (m.record_trace) {
    WriteFile(dir / "probs.csv", [&](std::ostream& o) {
      WriteProbabilityCsv(o, result.trace, base.num_strategies());
    });
  }
  WriteFile(dir / "manifest.cfg", [&](std::ostream& o) { o << m.ToText(); });

  const StrategyProfile strategies =
      ArgmaxProfile(result.final_profile, base.num_strategies());
  const bool vertex =
      RoundToVertices(result.final_profile, base.num_strategies(),
                      m.eps_vertex)
          .has_value();
  const double value = Evaluate(base, strategies);
  Json rows = Json::array();
  for (int i = 0; i < result.final_profile.num_agents(); ++i) {
    const auto row = result.final_profile.row(i);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  Json j;
  j["schema_version"] = m.schema_version;
  j["manifest_hash"] = m.HashHex();
  j["algorithm"] = m.algorithm;
  j["gamma"] = resolved.config.gamma;
  j["gamma_rule"] = resolved.gamma_rule;
  j["delta_max_estimate"] = resolved.delta.value;
  j["iterations"] = result.trace.iterations();
  j["final_jk"] = result.trace.jk.back();
  j["final_profile"] = rows;
  j["strategies"] = ProfileJson(strategies);
  j["vertex"] = vertex;
  j["equilibrium"] = result.equilibrium.has_value();
  j["equilibrium_iteration"] =
      result.equilibrium_iteration < 0 ? Json() : Json(result.equilibrium_iteration);
  j["f_value"] = value;
  j["upper_bound"] = base.UpperBound();
  if (topology) j["topology"] = TopologyJson(*topology);
  j["warnings"] = result.warnings;
  WriteFile(dir / "result.json", [&](std::ostream& o) { o << j.dump(2) << '\n'; });

  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  out << fmt::format("iterations={} equilibrium={} F={} strategies={} out={}\n",
                     result.trace.iterations(),
                     result.equilibrium ? "yes" : "no", value,
                     strategies.ToString(), dir.string());
  return kExitOk;
}

int CmdMonteCarlo(const Manifest& m, std::ostream& out, std::ostream& err) {
  m.Validate();
  const CoverageObjective base = ReadInstanceFile(m.instance);
  const ResolvedRun resolved = Resolve(m, base);
  RunConfig config = resolved.config;
  config.stop_on_equilibrium = false;
  config.record_trace = false;
  config.execution = Execution::kSerial;
  const int width = base.num_strategies() + (m.include_empty ? 1 : 0);
  const auto p0 = ProbabilityProfile::Uniform(base.num_agents(), width);

  std::vector<std::string> labels;
  std::vector<DelayTopology> topologies;
  if (m.algorithm == "alg1") {
    labels.push_back("alg1");
  } else {
    for (const auto& source : SplitList(m.topology)) {
      topologies.push_back(LoadTopology(source, base.num_agents(), m.hop_offset));
      labels.push_back(topologies.back().name);
    }
    if (labels.empty()) throw InvalidArgument("no topology given");
  }

  const int trials = m.trials;
  const int jobs = static_cast<int>(labels.size()) * trials;
  std::vector<RunResult> results(jobs);
  std::vector<std::exception_ptr> failures(jobs);
  const NetworkOptions options = NetworkOptionsFor(m);
#pragma omp parallel for schedule(dynamic)
  for (int job = 0; job < jobs; ++job) {
    try {
      const int label = job / trials;
      RunConfig trial_config = config;
      trial_config.seed = TrialSeed(m.seed, static_cast<std::uint64_t>(job % trials));
      results[job] = m.algorithm == "alg1"
                         ? RunAlgorithm1(base, p0, trial_config)
                         : RunAlgorithm2(base, p0, trial_config,
                                         topologies[label], options);
    } catch (...) {
      failures[job] = std::current_exception();
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  const fs::path dir(m.out);
  fs::create_directories(dir);
  WriteFile(dir / "manifest.cfg", [&](std::ostream& o) { o << m.ToText(); });
  Json summary;
  summary["schema_version"] = m.schema_version;
  summary["manifest_hash"] = m.HashHex();
  summary["gamma"] = config.gamma;
  summary["trials"] = trials;
  Json per_label = Json::object();
  for (std::size_t l = 0; l < labels.size(); ++l) {
    fs::create_directories(dir / labels[l]);
    std::vector<int> iterations;
    Json list = Json::array();
    for (int t = 0; t < trials; ++t) {
      const RunResult& r = results[l * trials + t];
      WriteFile(dir / labels[l] / fmt::format("trial_{:03d}.csv", t),
                [&](std::ostream& o) { WriteTraceCsv(o, r.trace); });
      list.push_back(r.equilibrium ? Json(r.equilibrium_iteration) : Json());
      iterations.push_back(r.equilibrium ? r.equilibrium_iteration
                                         : m.iters + 1);
    }
    std::sort(iterations.begin(), iterations.end());
    const int converged = static_cast<int>(std::count_if(
        iterations.begin(), iterations.end(), [&](int v) { return v <= m.iters; }));
    const int median = iterations[(iterations.size() - 1) / 2];
    Json entry;
    entry["equilibrium_iterations"] = list;
    entry["converged"] = converged;
    entry["median_iterations"] = median <= m.iters ? Json(median) : Json();
    if (!topologies.empty()) entry["topology"] = TopologyJson(topologies[l]);
    per_label[labels[l]] = entry;
    out << fmt::format("{}: converged {}/{} median_iterations={}\n", labels[l],
                       converged, trials,
                       median <= m.iters ? std::to_string(median) : "none");
  }
  summary["runs"] = per_label;
  WriteFile(dir / "summary.json",
            [&](std::ostream& o) { o << summary.dump(2) << '\n'; });

  WriteFile(dir / "jk_mean.csv", [&](std::ostream& o) {
    o << "iter";
    for (const auto& label : labels) o << ',' << label;
    o << '\n';
    for (int k = 0; k < m.iters; ++k) {
      o << k + 1;
      for (std::size_t l = 0; l < labels.size(); ++l) {
        double sum = 0.0;
        for (int t = 0; t < trials; ++t) sum += results[l * trials + t].trace.jk[k];
        o << fmt::format(",{:.17g}", sum / trials);
      }
      o << '\n';
    }
  });
  (void)err;
  return kExitOk;
}

struct IngestArgs {
  std::string ratings;
  std::string synth;
  std::string out;
  std::string candidates;
  double r_bar = 3.0;
  int min_likers = 300;
  int top_n = 0;
  int agents = 10;
  double min_rating = 0.5;
  double max_rating = 5.0;
  std::uint64_t seed = 0;
  bool no_reroll = false;
  int max_retries = 1000;
};

void EmitInstance(const IngestArgs& a, const CoverageObjective& objective,
                  std::ostream& out) {
  if (a.out.empty()) {
    WriteInstance(out, objective);
  } else {
    const fs::path path(a.out);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    WriteFile(path, [&](std::ostream& o) { WriteInstance(o, objective); });
  }
}

int CmdIngest(const IngestArgs& a, std::ostream& out, std::ostream& err) {
  if (a.ratings.empty() == a.synth.empty()) {
    err << "ingest: give exactly one of --ratings or --synth\n";
    return kExitUsage;
  }
  std::ostream& summary = a.out.empty() ? err : out;
  if (!a.synth.empty()) {
    std::map<std::string, std::string> fields;
    for (const auto& item : SplitList(a.synth)) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw InvalidArgument("--synth expects I=..,K=..,U=..,d=..");
      fields[Trim(item.substr(0, eq))] = Trim(item.substr(eq + 1));
    }
    auto need = [&](const std::string& key) {
      const auto it = fields.find(key);
      if (it == fields.end()) throw InvalidArgument("--synth is missing " + key);
      return it->second;
    };
    SynthOptions options;
    options.reroll_on_ties = !a.no_reroll;
    options.max_retries = a.max_retries;
    const auto objective = SynthInstance(
        ParseValue<int>("I", need("I")), ParseValue<int>("K", need("K")),
        ParseValue<int>("U", need("U")), ParseValue<double>("d", need("d")),
        a.seed, options);
    EmitInstance(a, objective, out);
    summary << fmt::format("agents={} candidates={} universe={}\n",
                           objective.num_agents(), objective.num_strategies(),
                           objective.universe_size());
    return kExitOk;
  }

  RatingsOptions options;
  options.min_rating = a.min_rating;
  options.max_rating = a.max_rating;
  const RatingsTable table = LoadRatings(a.ratings, options);
  for (const auto& message : table.messages) err << "skipped " << message << '\n';
  for (const auto& warning : table.warnings) err << "warning: " << warning << '\n';
  const CoverageBuild build =
      BuildCoverage(table, a.agents, a.r_bar, a.min_likers, a.top_n);
  EmitInstance(a, build.objective, out);
  if (!a.out.empty() || !a.candidates.empty()) {
    const std::string map_path =
        a.candidates.empty() ? a.out + ".candidates.csv" : a.candidates;
    WriteFile(map_path, [&](std::ostream& o) { WriteCandidateMap(o, build); });
  }
  summary << fmt::format(
      "records={} skipped={} candidates={} universe={}\n", table.records.size(),
      table.skipped, build.objective.num_strategies(),
      build.objective.universe_size());
  return kExitOk;
}

struct VerifyArgs {
  std::string instance;
  std::string result;
  std::string profile;
  std::string out;
  double upper_bound = 0.0;
  double eps_eq = 1e-12;
  std::uint64_t limit = kDefaultEnumerationLimit;
};

int CmdVerify(const VerifyArgs& a, std::ostream& out) {
  if (a.result.empty() == a.profile.empty())
    throw InvalidArgument("verify: give exactly one of --result or --profile");
  const CoverageObjective objective = ReadInstanceFile(a.instance);
  std::vector<int> choices;
  std::optional<double> recorded;
  if (!a.result.empty()) {
    const Json j = Json::parse(ReadWholeFile(a.result));
    choices = j.at("strategies").get<std::vector<int>>();
    if (j.contains("f_value")) recorded = j.at("f_value").get<double>();
  } else {
    for (const auto& item : SplitList(a.profile))
      choices.push_back(item == "-" ? kEmpty : ParseValue<int>("profile", item));
  }

  Json report;
  std::vector<std::string> problems;
  if (static_cast<int>(choices.size()) != objective.num_agents())
    problems.push_back(fmt::format("profile has {} entries, instance has {} agents",
                                   choices.size(), objective.num_agents()));
  for (int c : choices) {
    if (c != kEmpty && (c < 0 || c >= objective.num_strategies()))
      problems.push_back(fmt::format("strategy {} out of range", c));
  }
  if (!problems.empty()) {
    report["feasible"] = false;
    report["problems"] = problems;
    out << report.dump(2) << '\n';
    return kExitValidation;
  }
  const StrategyProfile profile(choices);
  const double value = Evaluate(objective, profile);
  if (recorded && std::abs(*recorded - value) > 1e-9)
    problems.push_back(fmt::format("recorded F {} differs from recomputed {}",
                                   *recorded, value));
  const auto improvement = FindImprovement(objective, profile, a.eps_eq);

  report["feasible"] = problems.empty();
  report["profile"] = ProfileJson(profile);
  report["value"] = value;
  report["equilibrium"] = !improvement.has_value();
  if (improvement) {
    report["violation"] = {{"agent", improvement->agent},
                           {"strategy", improvement->strategy},
                           {"gain", improvement->gain}};
  } else {
    report["violation"] = nullptr;
  }
  const auto space = CheckedPow(objective.num_strategies(), objective.num_agents());
  if (space && *space <= a.limit) {
    const auto best = BruteForce(objective, a.limit);
    report["reference"] = "brute_force";
    report["reference_value"] = best.value;
    report["optimum_profile"] = ProfileJson(best.profile);
    report["ratio"] = best.value > 0.0 ? value / best.value : 1.0;
  } else {
    const double bound = a.upper_bound > 0.0 ? a.upper_bound : objective.UpperBound();
    report["reference"] = "upper_bound";
    report["reference_value"] = bound;
    report["ratio"] = bound > 0.0 ? value / bound : 1.0;
  }
  report["half_bound_met"] = report["ratio"].get<double>() >= 0.5;
  if (!problems.empty()) report["problems"] = problems;
  const std::string text = report.dump(2) + "\n";
  out << text;
  if (!a.out.empty()) WriteFile(a.out, [&](std::ostream& o) { o << text; });
  return problems.empty() ? kExitOk : kExitValidation;
}

struct BaselineArgs {
  std::string instance;
  std::string method = "greedy";
  std::string out;
  double eps_eq = 1e-12;
  std::uint64_t limit = kDefaultEnumerationLimit;
};

Json SolutionJson(const CertifiedSolution& s) {
  Json j;
  j["kind"] = ToString(s.kind);
  j["profile"] = ProfileJson(s.profile);
  j["value"] = s.value;
  j["ratio_vs_optimal"] = s.ratio_vs_optimal ? Json(*s.ratio_vs_optimal) : Json();
  return j;
}

int CmdBaseline(const BaselineArgs& a, std::ostream& out) {
  const CoverageObjective objective = ReadInstanceFile(a.instance);
  Json j;
  if (a.method == "greedy") {
    j = SolutionJson(Greedy(objective));
  } else if (a.method == "brute-force") {
    j = SolutionJson(BruteForce(objective, a.limit));
  } else if (a.method == "equilibria") {
    Json list = Json::array();
    for (const auto& s : EnumerateEquilibria(objective, a.eps_eq, a.limit))
      list.push_back(SolutionJson(s));
    j["count"] = list.size();
    j["equilibria"] = list;
  } else {
    throw InvalidArgument("unknown method '" + a.method + "'");
  }
  const std::string text = j.dump(2) + "\n";
  out << text;
  if (!a.out.empty()) WriteFile(a.out, [&](std::ostream& o) { o << text; });
  return kExitOk;
}

void ApplyThreadCap() {
  const char* env = std::getenv("SUBMAX_THREADS");
  if (env == nullptr || *env == '\0') return;
  const int cap = ParseValue<int>("SUBMAX_THREADS", env);
  if (cap < 1) throw InvalidArgument("SUBMAX_THREADS must be >= 1");
  omp_set_num_threads(std::min(cap, omp_get_num_procs()));
}

// Config entries become "--key=value" right after the subcommand, so that
// later command-line flags win.
std::vector<std::string> InjectConfig(std::vector<std::string> args) {
  std::string path;
  for (std::size_t n = 1; n < args.size(); ++n) {
    if (args[n] == "--config" && n + 1 < args.size()) path = args[n + 1];
    if (args[n].rfind("--config=", 0) == 0) path = args[n].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  std::vector<std::string> injected;
  for (const auto& [key, value] : ParseConfigText(ReadWholeFile(path)))
    injected.push_back("--" + key + "=" + value);
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

}  // namespace

std::uint64_t Fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::vector<std::pair<std::string, std::string>> ParseConfigText(
    std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw ParseError(fmt::format("config line {}: expected key = value", line_number));
    const std::string key = Trim(trimmed.substr(0, eq));
    if (key.empty() || key.find_first_not_of(
                           "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_") !=
                           std::string::npos)
      throw ParseError(fmt::format("config line {}: bad key '{}'", line_number, key));
    entries.emplace_back(key, Trim(trimmed.substr(eq + 1)));
  }
  return entries;
}

std::string Manifest::ToText() const {
  std::string text;
  auto line = [&](std::string_view key, const std::string& value) {
    text += fmt::format("{} = {}\n", key, value);
  };
  line("schema-version", std::to_string(schema_version));
  line("instance", instance);
  line("alg", algorithm);
  line("gamma", gamma);
  line("M", std::to_string(sample_size));
  line("iters", std::to_string(iters));
  line("seed", std::to_string(seed));
  line("eps-vertex", fmt::format("{:.17g}", eps_vertex));
  line("eps-eq", fmt::format("{:.17g}", eps_eq));
  line("stop-on-equilibrium", Bool(stop_on_equilibrium));
  line("check-every", std::to_string(check_every));
  line("record-trace", Bool(record_trace));
  line("include-empty", Bool(include_empty));
  line("topology", topology);
  line("hop-offset", std::to_string(hop_offset));
  line("bootstrap", bootstrap);
  line("publish", publish);
  line("trials", std::to_string(trials));
  line("out", out);
  return text;
}

Manifest Manifest::FromText(std::string_view text) {
  Manifest m;
  for (const auto& [key, value] : ParseConfigText(text)) {
    if (key == "schema-version") m.schema_version = ParseValue<int>(key, value);
    else if (key == "instance") m.instance = value;
    else if (key == "alg") m.algorithm = value;
    else if (key == "gamma") m.gamma = value;
    else if (key == "M") m.sample_size = ParseValue<int>(key, value);
    else if (key == "iters") m.iters = ParseValue<int>(key, value);
    else if (key == "seed") m.seed = ParseValue<std::uint64_t>(key, value);
    else if (key == "eps-vertex") m.eps_vertex = ParseValue<double>(key, value);
    else if (key == "eps-eq") m.eps_eq = ParseValue<double>(key, value);
    else if (key == "stop-on-equilibrium") m.stop_on_equilibrium = ParseBool(key, value);
    else if (key == "check-every") m.check_every = ParseValue<int>(key, value);
    else if (key == "record-trace") m.record_trace = ParseBool(key, value);
    else if (key == "include-empty") m.include_empty = ParseBool(key, value);
    else if (key == "topology") m.topology = value;
    else if (key == "hop-offset") m.hop_offset = ParseValue<int>(key, value);
    else if (key == "bootstrap") m.bootstrap = value;
    else if (key == "publish") m.publish = value;
    else if (key == "trials") m.trials = ParseValue<int>(key, value);
    else if (key == "out") m.out = value;
    else throw ParseError("unknown manifest key '" + key + "'");
  }
  return m;
}

std::uint64_t Manifest::Hash() const { return Fnv1a64(ToText()); }

std::string Manifest::HashHex() const { return fmt::format("{:016x}", Hash()); }

void Manifest::Validate() const {
  if (schema_version != 1) throw InvalidArgument("unsupported schema version");
  if (instance.empty()) throw InvalidArgument("instance path is required");
  if (algorithm != "alg1" && algorithm != "alg2")
    throw InvalidArgument("alg must be alg1 or alg2");
  if (gamma != "auto") {
    const double g = ParseValue<double>("gamma", gamma);
    if (!(g > 0.0)) throw InvalidArgument("gamma must be positive");
  }
  if (sample_size < 1) throw InvalidArgument("M must be >= 1");
  if (iters < 1) throw InvalidArgument("iters must be >= 1");
  if (check_every < 1) throw InvalidArgument("check-every must be >= 1");
  if (hop_offset < 0) throw InvalidArgument("hop-offset must be >= 0");
  if (bootstrap != "empty" && bootstrap != "initial")
    throw InvalidArgument("bootstrap must be empty or initial");
  if (publish != "after" && publish != "before")
    throw InvalidArgument("publish must be after or before");
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (out.empty()) throw InvalidArgument("out directory is required");
}

int RunCli(std::vector<std::string> args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Distributed submodular maximization by projected stochastic "
               "gradient",
               "submax"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build an instance file");
  ingest_cmd->add_option("--ratings", ingest.ratings, "MovieLens-style ratings CSV");
  ingest_cmd->add_option("--synth", ingest.synth, "Synthetic I=..,K=..,U=..,d=..");
  ingest_cmd->add_option("--out", ingest.out, "Instance path (stdout if absent)");
  ingest_cmd->add_option("--candidates", ingest.candidates,
                         "Candidate map CSV (default <out>.candidates.csv)");
  ingest_cmd->add_option("--rbar", ingest.r_bar, "Like threshold");
  ingest_cmd->add_option("--min-likers", ingest.min_likers, "Popularity floor");
  ingest_cmd->add_option("--top-n", ingest.top_n, "Keep the N most liked (0: all)");
  ingest_cmd->add_option("--agents", ingest.agents, "Agent count I");
  ingest_cmd->add_option("--min-rating", ingest.min_rating, "Lowest valid rating");
  ingest_cmd->add_option("--max-rating", ingest.max_rating, "Highest valid rating");
  ingest_cmd->add_option("--seed", ingest.seed, "Synthetic seed");
  ingest_cmd->add_flag("--no-reroll", ingest.no_reroll,
                       "Keep the first synthetic draw even with ties");
  ingest_cmd->add_option("--max-retries", ingest.max_retries, "Synthetic redraw cap");

  Manifest run;
  std::string run_config;
  auto* run_cmd = app.add_subcommand("run", "Run one optimization");
  AddManifestOptions(run_cmd, run, run_config);

  Manifest mc;
  mc.trials = 20;
  std::string mc_config;
  auto* mc_cmd = app.add_subcommand("montecarlo", "Run seeded trials and average J^k");
  AddManifestOptions(mc_cmd, mc, mc_config);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Certify a result");
  verify_cmd->add_option("--instance", verify.instance, "Instance file")->required();
  verify_cmd->add_option("--result", verify.result, "result.json from run");
  verify_cmd->add_option("--profile", verify.profile, "Comma list; '-' abstains");
  verify_cmd->add_option("--upper-bound", verify.upper_bound,
                         "Reference bound when brute force is out of reach");
  verify_cmd->add_option("--eps-eq", verify.eps_eq, "Equilibrium tolerance");
  verify_cmd->add_option("--limit", verify.limit, "Brute-force profile limit");
  verify_cmd->add_option("--out", verify.out, "Also write the report here");

  BaselineArgs baseline;
  auto* baseline_cmd = app.add_subcommand("baseline", "Greedy or exhaustive baselines");
  baseline_cmd->add_option("--instance", baseline.instance, "Instance file")->required();
  baseline_cmd->add_option("--method", baseline.method,
                           "greedy | brute-force | equilibria");
  baseline_cmd->add_option("--eps-eq", baseline.eps_eq, "Equilibrium tolerance");
  baseline_cmd->add_option("--limit", baseline.limit, "Enumeration limit");
  baseline_cmd->add_option("--out", baseline.out, "Also write the JSON here");

  try {
    ApplyThreadCap();
    args = InjectConfig(std::move(args));
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << e.what() << '\n';
      for (auto* sub : app.get_subcommands()) err << sub->help();
      return kExitUsage;
    }
    if (ingest_cmd->parsed()) return CmdIngest(ingest, out, err);
    if (run_cmd->parsed()) return CmdRun(run, out, err);
    if (mc_cmd->parsed()) return CmdMonteCarlo(mc, out, err);
    if (verify_cmd->parsed()) return CmdVerify(verify, out);
    if (baseline_cmd->parsed()) return CmdBaseline(baseline, out);
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace submax

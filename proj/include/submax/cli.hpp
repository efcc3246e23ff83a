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

#ifndef SUBMAX_CLI_HPP_
#define SUBMAX_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace submax {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitValidation = 3,
  kExitRuntime = 4,
};

// Everything needed to reproduce a run or a Monte-Carlo battery. Keys in the
// text form are the long flag names of the run/montecarlo subcommands.
struct Manifest {
  int schema_version = 1;
  std::string instance;
  std::string algorithm = "alg1";
  std::string gamma = "auto";  // a positive number or "auto"
  int sample_size = 3;
  int iters = 1000;
  std::uint64_t seed = 0;
  double eps_vertex = 1e-9;
  double eps_eq = 1e-12;
  bool stop_on_equilibrium = false;
  int check_every = 10;
  bool record_trace = false;
  bool include_empty = false;
  // Builtin name or edge-list path; montecarlo takes a comma list.
  std::string topology = "complete";
  int hop_offset = 0;
  std::string bootstrap = "empty";  // empty | initial
  std::string publish = "after";    // after | before
  int trials = 1;
  std::string out = "out";

  // One "key = value" line per field, fixed order; doubles use %.17g.
  std::string ToText() const;
  static Manifest FromText(std::string_view text);
  // FNV-1a 64 of ToText().
  std::uint64_t Hash() const;
  std::string HashHex() const;
  // Throws InvalidArgument.
  void Validate() const;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

std::uint64_t Fnv1a64(std::string_view text);

// "key = value" lines; blank lines and lines starting with '#' are skipped.
// Throws ParseError with the line number on anything else.
std::vector<std::pair<std::string, std::string>> ParseConfigText(
    std::string_view text);

// args excludes the program name. Returns an ExitCode.
int RunCli(std::vector<std::string> args, std::ostream& out,
           std::ostream& err);

}  // namespace submax

#endif  // SUBMAX_CLI_HPP_

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

#include <charconv>
#include <limits>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "submax/errors.hpp"
#include "submax/objective.hpp"

namespace submax {

namespace {

[[noreturn]] void Fail(std::size_t line, const std::string& what) {
  throw ParseError("instance line " + std::to_string(line) + ": " + what);
}

std::vector<long long> ParseIntegers(const std::string& text, std::size_t line) {
  std::vector<long long> values;
  const char* p = text.data();
  const char* end = p + text.size();
  while (true) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p == end) break;
    long long v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() ||
        (next < end && *next != ' ' && *next != '\t' && *next != '\r')) {
      Fail(line, "expected an integer");
    }
    values.push_back(v);
    p = next;
  }
  return values;
}

}  // namespace

void WriteInstance(std::ostream& out, const CoverageObjective& objective) {
  out << objective.num_agents() << ' ' << objective.num_strategies() << ' '
      << objective.universe_size() << '\n';
  for (const auto& set : objective.liker_sets()) {
    for (std::size_t n = 0; n < set.size(); ++n) {
      if (n > 0) out << ' ';
      out << set[n];
    }
    out << '\n';
  }
}

CoverageObjective ReadInstance(std::istream& in) {
  std::string text;
  std::size_t line = 0;
  std::vector<long long> header;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty() || text[0] == '#') continue;
    header = ParseIntegers(text, line);
    break;
  }
  if (header.size() != 3) Fail(line, "header must be 'I K universe_size'");
  const long long agents = header[0], strategies = header[1],
                  universe = header[2];
  if (agents < 1 || strategies < 1 || universe < 0 ||
      universe > std::numeric_limits<int>::max()) {
    Fail(line, "header values out of range");
  }
  std::vector<std::vector<int>> sets;
  sets.reserve(static_cast<std::size_t>(strategies));
  for (long long j = 0; j < strategies; ++j) {
    if (!std::getline(in, text)) {
      Fail(line, "expected " + std::to_string(strategies) +
                     " liker lines, found " + std::to_string(j));
    }
    ++line;
    std::vector<int> set;
    for (long long id : ParseIntegers(text, line)) {
      if (id < 0 || id >= universe) Fail(line, "user id outside universe");
      set.push_back(static_cast<int>(id));
    }
    sets.push_back(std::move(set));
  }
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") != std::string::npos)
      Fail(line, "unexpected content after the last liker line");
  }
  return CoverageObjective(static_cast<int>(agents), static_cast<int>(universe),
                           std::move(sets));
}

void WriteInstanceFile(const std::string& path,
                       const CoverageObjective& objective) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  WriteInstance(out, objective);
  if (!out) throw Error("write failed: " + path);
}

CoverageObjective ReadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open instance file " + path);
  return ReadInstance(in);
}

}  // namespace submax

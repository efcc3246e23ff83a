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

#include "submax/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "submax/errors.hpp"
#include "submax/rng.hpp"

namespace submax {

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
bool ParseNumber(std::string_view text, T& value) {
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

RatingsTable ParseRatings(std::istream& in, const RatingsOptions& options) {
  RatingsTable table;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("ratings file is empty");
  const auto header = SplitCommas(line);
  int user_col = -1;
  int movie_col = -1;
  int rating_col = -1;
  for (int c = 0; c < static_cast<int>(header.size()); ++c) {
    if (header[c] == "userId") user_col = c;
    if (header[c] == "movieId") movie_col = c;
    if (header[c] == "rating") rating_col = c;
  }
  if (user_col < 0 || movie_col < 0 || rating_col < 0)
    throw ParseError("ratings header must name userId, movieId and rating");
  const auto needed = static_cast<std::size_t>(
      std::max({user_col, movie_col, rating_col}) + 1);

  auto skip = [&](std::size_t line_number, std::string_view reason) {
    ++table.skipped;
    if (table.messages.size() < options.max_messages)
      table.messages.push_back(fmt::format("line {}: {}", line_number, reason));
  };

  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    ++table.rows_read;
    const auto fields = SplitCommas(line);
    if (fields.size() < needed) {
      skip(line_number, "too few fields");
      continue;
    }
    Rating r;
    if (!ParseNumber(fields[user_col], r.user)) {
      skip(line_number, "bad userId");
      continue;
    }
    if (!ParseNumber(fields[movie_col], r.movie)) {
      skip(line_number, "bad movieId");
      continue;
    }
    if (!ParseNumber(fields[rating_col], r.rating) || !std::isfinite(r.rating)) {
      skip(line_number, "bad rating");
      continue;
    }
    if (r.rating < options.min_rating || r.rating > options.max_rating) {
      skip(line_number, "rating out of range");
      continue;
    }
    table.records.push_back(r);
  }

  std::stable_sort(table.records.begin(), table.records.end(),
                   [](const Rating& a, const Rating& b) {
                     return a.user != b.user ? a.user < b.user
                                             : a.movie < b.movie;
                   });
  std::vector<Rating> unique;
  unique.reserve(table.records.size());
  for (const Rating& r : table.records) {
    if (!unique.empty() && unique.back().user == r.user &&
        unique.back().movie == r.movie) {
      unique.back() = r;
      ++table.duplicates;
    } else {
      unique.push_back(r);
    }
  }
  table.records = std::move(unique);
  if (table.records.empty()) table.warnings.push_back("no ratings records");
  if (table.skipped > 0)
    table.warnings.push_back(fmt::format("skipped {} malformed rows", table.skipped));
  return table;
}

RatingsTable LoadRatings(const std::string& path,
                         const RatingsOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open ratings file " + path);
  return ParseRatings(in, options);
}

CoverageBuild BuildCoverage(const RatingsTable& table, int num_agents,
                            double r_bar, int min_likers, int top_n) {
  if (num_agents < 1) throw InvalidArgument("need at least one agent");
  if (!std::isfinite(r_bar)) throw InvalidArgument("r_bar must be finite");
  if (min_likers < 0 || top_n < 0)
    throw InvalidArgument("min_likers and top_n must be >= 0");

  std::map<std::int64_t, std::vector<std::int64_t>> likers;
  for (const Rating& r : table.records) {
    if (r.rating >= r_bar) likers[r.movie].push_back(r.user);
  }
  std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> survivors;
  for (auto& [movie, users] : likers) {
    if (!users.empty() && static_cast<int>(users.size()) >= min_likers)
      survivors.emplace_back(movie, std::move(users));
  }
  if (top_n > 0 && static_cast<int>(survivors.size()) > top_n) {
    std::stable_sort(survivors.begin(), survivors.end(),
                     [](const auto& a, const auto& b) {
                       return a.second.size() > b.second.size();
                     });
    survivors.resize(top_n);
    std::sort(survivors.begin(), survivors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  if (survivors.empty())
    throw InvalidArgument("no movie survives the like threshold and floor");

  std::vector<std::int64_t> users;
  for (const auto& [movie, set] : survivors)
    users.insert(users.end(), set.begin(), set.end());
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());

  std::vector<std::vector<int>> sets;
  std::vector<std::int64_t> movie_ids;
  std::vector<int> counts;
  for (const auto& [movie, set] : survivors) {
    std::vector<int> dense;
    dense.reserve(set.size());
    for (std::int64_t u : set) {
      dense.push_back(static_cast<int>(
          std::lower_bound(users.begin(), users.end(), u) - users.begin()));
    }
    movie_ids.push_back(movie);
    counts.push_back(static_cast<int>(dense.size()));
    sets.push_back(std::move(dense));
  }
  return CoverageBuild{
      CoverageObjective(num_agents, static_cast<int>(users.size()),
                        std::move(sets)),
      std::move(movie_ids), std::move(users), std::move(counts)};
}

void WriteCandidateMap(std::ostream& out, const CoverageBuild& build) {
  out << "strategy,movie_id,likers\n";
  for (std::size_t a = 0; a < build.movie_ids.size(); ++a)
    fmt::print(out, "{},{},{}\n", a, build.movie_ids[a], build.liker_counts[a]);
}

CoverageObjective SynthInstance(int num_agents, int num_strategies,
                                int universe_size, double density,
                                std::uint64_t seed,
                                const SynthOptions& options) {
  if (num_agents < 1 || num_strategies < 1 || universe_size < 1)
    throw InvalidArgument("I, K and U must be positive");
  if (!(density > 0.0 && density <= 1.0))
    throw InvalidArgument("density must be in (0, 1]");
  if (options.max_retries < 1) throw InvalidArgument("max_retries must be >= 1");

  for (int attempt = 0; attempt < options.max_retries; ++attempt) {
    StreamRng rng(StreamKey(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<std::vector<int>> sets(num_strategies);
    for (auto& set : sets) {
      for (int u = 0; u < universe_size; ++u) {
        if (rng.Uniform() < density) set.push_back(u);
      }
    }
    CoverageObjective objective(num_agents, universe_size, std::move(sets));
    if (!options.reroll_on_ties) return objective;
    try {
      if (CheckDistinguishable(objective, 1e-12, options.check_limit)
              .distinguishable)
        return objective;
    } catch (const LimitExceeded&) {
      return objective;
    }
  }
  throw Error(fmt::format(
      "synthetic instance retries exhausted: {} draws all had tied best "
      "responses",
      options.max_retries));
}

}  // namespace submax

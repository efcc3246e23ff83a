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

#ifndef SUBMAX_INGEST_HPP_
#define SUBMAX_INGEST_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "submax/objective.hpp"

namespace submax {

struct Rating {
  std::int64_t user = 0;
  std::int64_t movie = 0;
  double rating = 0.0;
};

struct RatingsOptions {
  double min_rating = 0.5;
  double max_rating = 5.0;
  // Keep at most this many skipped-row messages (the count is exact).
  std::size_t max_messages = 100;
};

// Sorted by (user, movie), one record per pair: the last occurrence in the
// file wins.
struct RatingsTable {
  std::vector<Rating> records;
  std::size_t rows_read = 0;
  std::size_t skipped = 0;
  std::size_t duplicates = 0;
  std::vector<std::string> messages;  // "line N: reason"
  std::vector<std::string> warnings;
};

// Header must name userId, movieId and rating (any order, extra columns
// ignored). Throws ParseError when a required column is missing.
RatingsTable ParseRatings(std::istream& in, const RatingsOptions& options = {});
RatingsTable LoadRatings(const std::string& path,
                         const RatingsOptions& options = {});

struct CoverageBuild {
  CoverageObjective objective;
  std::vector<std::int64_t> movie_ids;   // strategy index -> movie id
  std::vector<std::int64_t> user_ids;    // dense user -> original id
  std::vector<int> liker_counts;         // per strategy
};

// A movie is a candidate when at least `min_likers` users rate it >= r_bar.
// top_n > 0 keeps the most liked candidates (ties to the smaller id).
// Candidates are ordered by movie id; users are renumbered densely in id
// order over the union of candidate liker sets. Throws InvalidArgument when
// no movie survives.
CoverageBuild BuildCoverage(const RatingsTable& table, int num_agents,
                            double r_bar, int min_likers, int top_n = 0);

// strategy,movie_id,likers
void WriteCandidateMap(std::ostream& out, const CoverageBuild& build);

struct SynthOptions {
  // Redraw until no agent ever faces tied best responses, when the instance
  // is small enough to check exhaustively.
  bool reroll_on_ties = true;
  int max_retries = 1000;
  std::uint64_t check_limit = kDefaultEnumerationLimit;
};

// Each user joins each liker set independently with probability `density`.
// Attempt n draws from StreamKey(seed, n). Throws Error when every attempt
// has ties.
CoverageObjective SynthInstance(int num_agents, int num_strategies,
                                int universe_size, double density,
                                std::uint64_t seed,
                                const SynthOptions& options = {});

}  // namespace submax

#endif  // SUBMAX_INGEST_HPP_

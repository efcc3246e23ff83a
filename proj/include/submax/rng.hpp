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

#ifndef SUBMAX_RNG_HPP_
#define SUBMAX_RNG_HPP_

#include <cstdint>
#include <limits>

namespace submax {

// SplitMix64 finalizer: a bijective 64-bit mixer.
std::uint64_t Mix64(std::uint64_t z);

// Derives an independent stream key from a master seed and up to three
// stream coordinates (e.g. agent, iteration, purpose).
std::uint64_t StreamKey(std::uint64_t seed, std::uint64_t a,
                        std::uint64_t b = 0, std::uint64_t c = 0);

// Seed of Monte-Carlo trial `trial` under `master_seed`: the (trial+1)-th
// output of a SplitMix64 generator started at `master_seed`.
std::uint64_t TrialSeed(std::uint64_t master_seed, std::uint64_t trial);

// Counter-based generator. Output n is Mix64(key + (n+1) * golden), so a
// stream is fully determined by its key and position, independent of which
// thread draws from it. Satisfies UniformRandomBitGenerator.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit StreamRng(std::uint64_t key) : state_(key) {}
  StreamRng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
            std::uint64_t c = 0)
      : state_(StreamKey(seed, a, b, c)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return Mix64(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n); n > 0. Lemire's multiply-shift with
  // rejection, so there is no modulo bias.
  std::uint64_t Below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

}  // namespace submax

#endif  // SUBMAX_RNG_HPP_

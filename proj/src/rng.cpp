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

#include "submax/rng.hpp"

namespace submax {

std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t StreamKey(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                        std::uint64_t c) {
  std::uint64_t key = Mix64(seed ^ 0x243F6A8885A308D3ULL);
  key = Mix64(key ^ (a + 0x13198A2E03707344ULL));
  key = Mix64(key ^ (b + 0xA4093822299F31D0ULL));
  key = Mix64(key ^ (c + 0x082EFA98EC4E6C89ULL));
  return key;
}

std::uint64_t TrialSeed(std::uint64_t master_seed, std::uint64_t trial) {
  return Mix64(master_seed + (trial + 1) * 0x9E3779B97F4A7C15ULL);
}

std::uint64_t StreamRng::Below(std::uint64_t n) {
  __extension__ using u128 = unsigned __int128;
  u128 m = static_cast<u128>((*this)()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<u128>((*this)()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace submax

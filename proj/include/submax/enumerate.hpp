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

#ifndef SUBMAX_ENUMERATE_HPP_
#define SUBMAX_ENUMERATE_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>

#include "submax/errors.hpp"

namespace submax {

// Default budget for exhaustive routines, in oracle calls.
inline constexpr std::uint64_t kDefaultEnumerationLimit = 1'000'000;

// base^exp, or nullopt on uint64 overflow.
inline std::optional<std::uint64_t> CheckedPow(std::uint64_t base, int exp) {
  std::uint64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base)
      return std::nullopt;
    result *= base;
  }
  return result;
}

// a*b, or nullopt on overflow.
inline std::optional<std::uint64_t> CheckedMul(std::optional<std::uint64_t> a,
                                               std::uint64_t b) {
  if (!a) return std::nullopt;
  if (b != 0 && *a > std::numeric_limits<std::uint64_t>::max() / b)
    return std::nullopt;
  return *a * b;
}

// Throws LimitExceeded unless `calls` is known and within `limit`.
inline void RequireWithinLimit(std::optional<std::uint64_t> calls,
                               std::uint64_t limit, const char* what) {
  if (!calls || *calls > limit) {
    throw LimitExceeded(std::string(what) + ": needs " +
                        (calls ? std::to_string(*calls) : "> 2^64") +
                        " oracle calls, limit is " + std::to_string(limit));
  }
}

// Writes the mixed-radix digits of `index` (least significant digit last,
// so increasing indices enumerate profiles in lexicographic order).
inline void DecodeIndex(std::uint64_t index, int radix, std::span<int> digits) {
  for (std::size_t pos = digits.size(); pos-- > 0;) {
    digits[pos] = static_cast<int>(index % static_cast<std::uint64_t>(radix));
    index /= static_cast<std::uint64_t>(radix);
  }
}

// Advances `digits` to the next profile in lexicographic order. Returns
// false after the last one (digits wrap to all zeros).
inline bool NextIndex(std::span<int> digits, int radix) {
  for (std::size_t pos = digits.size(); pos-- > 0;) {
    if (++digits[pos] < radix) return true;
    digits[pos] = 0;
  }
  return false;
}

}  // namespace submax

#endif  // SUBMAX_ENUMERATE_HPP_

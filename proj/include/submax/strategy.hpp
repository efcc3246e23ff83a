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

#ifndef SUBMAX_STRATEGY_HPP_
#define SUBMAX_STRATEGY_HPP_

#include <span>
#include <string>
#include <vector>

namespace submax {

// Sentinel for an agent that abstains. F treats the slot as absent.
inline constexpr int kEmpty = -1;

// One choice per agent: a strategy index in [0, K) or kEmpty.
class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(std::vector<int> choices)
      : choices_(std::move(choices)) {}

  static StrategyProfile AllEmpty(int num_agents) {
    return StrategyProfile(std::vector<int>(num_agents, kEmpty));
  }

  int size() const { return static_cast<int>(choices_.size()); }
  int operator[](int agent) const { return choices_[agent]; }
  int& operator[](int agent) { return choices_[agent]; }
  bool IsEmpty(int agent) const { return choices_[agent] == kEmpty; }

  std::span<const int> choices() const { return choices_; }
  std::span<int> mutable_choices() { return choices_; }

  // "[0,3,-]" with '-' for kEmpty.
  std::string ToString() const;

  friend bool operator==(const StrategyProfile&,
                         const StrategyProfile&) = default;
  friend auto operator<=>(const StrategyProfile&,
                          const StrategyProfile&) = default;

 private:
  std::vector<int> choices_;
};

}  // namespace submax

#endif  // SUBMAX_STRATEGY_HPP_

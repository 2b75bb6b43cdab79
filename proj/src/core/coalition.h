/*
 * Copyright 2026 The shapaudit Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SHAPAUDIT_CORE_COALITION_H_
#define SHAPAUDIT_CORE_COALITION_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace shapaudit {

// A set of players encoded as a bitmask: bit i is set iff player i (0-based)
// belongs to the coalition. The player count is carried by the owning Game.
class Coalition {
 public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(uint64_t bits) : bits_(bits) {}

  // Coalition of the given 0-based player indices.
  static Coalition Of(std::initializer_list<int> players) {
    uint64_t bits = 0;
    for (int p : players) bits |= uint64_t{1} << p;
    return Coalition(bits);
  }

  static constexpr Coalition Full(int num_players) {
    return Coalition((uint64_t{1} << num_players) - 1);
  }

  constexpr uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }

  constexpr bool Contains(int player) const { return (bits_ >> player) & 1; }
  constexpr Coalition With(int player) const {
    return Coalition(bits_ | (uint64_t{1} << player));
  }
  constexpr Coalition Without(int player) const {
    return Coalition(bits_ & ~(uint64_t{1} << player));
  }
  constexpr bool IsSubsetOf(Coalition other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  std::vector<int> Members() const {
    std::vector<int> out;
    for (uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b));
    }
    return out;
  }

  constexpr auto operator<=>(const Coalition&) const = default;

 private:
  uint64_t bits_ = 0;
};

}  // namespace shapaudit

#endif  // SHAPAUDIT_CORE_COALITION_H_

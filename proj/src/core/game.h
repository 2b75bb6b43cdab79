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

#ifndef SHAPAUDIT_CORE_GAME_H_
#define SHAPAUDIT_CORE_GAME_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/coalition.h"

namespace shapaudit {

// Default tolerances. Algebraic identities are checked relative to
// max(1, |C(F)|); lattice monotonicity uses an absolute slack.
inline constexpr double kIdentityTolerance = 1e-9;
inline constexpr double kMonotonicSlack = 1e-12;

// A transferable-utility game over a complete coalition lattice.
//
// Raw worths are stored densely, indexed by Coalition::bits(). The raw worth of
// the empty coalition is the offset; value() reports C_raw(S) - offset, so
// value(∅) == 0 holds exactly while the raw table survives serialization
// bit-for-bit.
class Game {
 public:
  static constexpr int kMaxPlayers = 25;

  // `raw_values` has 2^labels.size() entries; raw_values[0] is the worth of the
  // empty coalition before normalization. Throws kCapacity for more than
  // kMaxPlayers players and kValidation for malformed input.
  static Game FromRaw(std::vector<std::string> labels,
                      std::vector<double> raw_values, std::string tag);

  // Players labelled "1".."d".
  static Game FromRaw(std::vector<double> raw_values, std::string tag);

  int num_players() const { return static_cast<int>(labels_.size()); }
  uint64_t num_coalitions() const { return raw_values_.size(); }
  Coalition full() const { return Coalition::Full(num_players()); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int player) const { return labels_.at(player); }
  // Index of the player with this label, or nullopt.
  std::optional<int> IndexOf(std::string_view label) const;

  // Normalized worth C(S) = C_raw(S) - C_raw(∅).
  double value(Coalition s) const { return raw_values_[s.bits()] - offset_; }
  double raw_value(Coalition s) const { return raw_values_[s.bits()]; }
  // Differences of raw entries equal differences of normalized values.
  std::span<const double> raw_values() const { return raw_values_; }

  double offset() const { return offset_; }
  const std::string& tag() const { return tag_; }

 private:
  Game(std::vector<std::string> labels, std::vector<double> raw_values,
       std::string tag)
      : labels_(std::move(labels)),
        raw_values_(std::move(raw_values)),
        offset_(raw_values_[0]),
        tag_(std::move(tag)) {}

  std::vector<std::string> labels_;
  std::vector<double> raw_values_;
  double offset_ = 0.0;
  std::string tag_;
};

enum class AttributionMethod { kExactSubset, kPermutationOracle };

struct Attribution {
  std::vector<double> phi;
  std::string game_tag;
  AttributionMethod method = AttributionMethod::kExactSubset;

  int size() const { return static_cast<int>(phi.size()); }
};

// |S|!(d-|S|-1)!/d!, from exact integer factorials. Requires 0 <= s < d.
double ShapleyWeight(int coalition_size, int num_players);

// C(S ∪ {i}) - C(S). Requires i ∉ S.
double MarginalContribution(const Game& game, int player, Coalition s);

// Shapley values by weighted summation over every coalition excluding each
// player. Supports up to Game::kMaxPlayers players.
Attribution ExactShapley(const Game& game);

// Average marginal contribution over all d! player orderings. Test oracle for
// ExactShapley; limited to 8 players.
inline constexpr int kMaxPermutationPlayers = 8;
Attribution PermutationShapley(const Game& game);

// The (d-1)-player game on F \ {player}; remaining players keep their order.
Game Restrict(const Game& game, int player);

// Pointwise sum; both games must share player count and labels.
Game AddGames(const Game& a, const Game& b);
Game ScaleGame(const Game& game, double factor);

// Appends a player whose marginal contribution is zero everywhere.
Game WithDummy(const Game& game, std::string label);

struct LatticeEdge {
  Coalition from;
  int player = 0;  // The edge goes from `from` to `from ∪ {player}`.
};

struct MonotonicityResult {
  bool monotonic = true;
  // First violating edge in (coalition, player) scan order.
  std::optional<LatticeEdge> violation;
};

MonotonicityResult CheckMonotonic(const Game& game,
                                  double slack = kMonotonicSlack);

// Human-readable "{1,3}" using 1-based player indices.
std::string FormatCoalition(Coalition s);
// "{a,b}" using player labels.
std::string FormatCoalition(const Game& game, Coalition s);

}  // namespace shapaudit

#endif  // SHAPAUDIT_CORE_GAME_H_

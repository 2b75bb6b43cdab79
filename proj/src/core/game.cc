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

#include "core/game.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>
#include <utility>

#include "core/compensated_sum.h"
#include "core/error.h"

namespace shapaudit {
namespace {

// Below this size the per-player loop is cheaper than spawning threads.
constexpr int kParallelShapleyPlayers = 14;

unsigned __int128 Factorial(int n) {
  unsigned __int128 f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<unsigned>(k);
  return f;
}

// Maps a (d-1)-bit mask to the d-bit mask obtained by inserting a zero at bit
// position `player`.
uint64_t InsertZeroBit(uint64_t mask, int player) {
  const uint64_t low = (uint64_t{1} << player) - 1;
  return (mask & low) | ((mask & ~low) << 1);
}

void CheckPlayer(const Game& game, int player) {
  if (player < 0 || player >= game.num_players()) {
    ThrowInvalidArgument("player index " + std::to_string(player) +
                         " out of range for a " +
                         std::to_string(game.num_players()) + "-player game");
  }
}

void CheckCompatible(const Game& a, const Game& b) {
  if (a.num_players() != b.num_players()) {
    ThrowInvalidArgument("games have different player counts (" +
                         std::to_string(a.num_players()) + " vs " +
                         std::to_string(b.num_players()) + ")");
  }
  if (a.labels() != b.labels()) {
    ThrowInvalidArgument("games have different player labels");
  }
}

double ShapleyForPlayer(const Game& game, int player,
                        const std::vector<double>& weights) {
  const int d = game.num_players();
  const auto values = game.raw_values();
  const uint64_t bit = uint64_t{1} << player;
  const uint64_t half = uint64_t{1} << (d - 1);
  std::vector<CompensatedSum> by_size(d);
  for (uint64_t m = 0; m < half; ++m) {
    const uint64_t s = InsertZeroBit(m, player);
    by_size[std::popcount(m)].Add(values[s | bit] - values[s]);
  }
  CompensatedSum phi;
  for (int size = 0; size < d; ++size) {
    phi.Add(weights[size] * by_size[size].Total());
  }
  return phi.Total();
}

}  // namespace

Game Game::FromRaw(std::vector<std::string> labels,
                   std::vector<double> raw_values, std::string tag) {
  const int d = static_cast<int>(labels.size());
  if (d > kMaxPlayers) {
    ThrowCapacity("game has " + std::to_string(d) + " players; at most " +
                  std::to_string(kMaxPlayers) + " are supported");
  }
  if (d < 1) ThrowValidation("game needs at least one player");
  std::set<std::string> seen;
  for (const auto& label : labels) {
    if (label.empty()) ThrowValidation("player labels must be non-empty");
    if (!seen.insert(label).second) {
      ThrowValidation("duplicate player label \"" + label + "\"");
    }
  }
  const uint64_t expected = uint64_t{1} << d;
  if (raw_values.size() != expected) {
    ThrowValidation("expected " + std::to_string(expected) +
                    " coalition values, got " +
                    std::to_string(raw_values.size()));
  }
  for (uint64_t s = 0; s < expected; ++s) {
    if (!std::isfinite(raw_values[s]) ||
        !std::isfinite(raw_values[s] - raw_values[0])) {
      ThrowValidation("non-finite value for coalition " +
                      FormatCoalition(Coalition(s)));
    }
  }
  return Game(std::move(labels), std::move(raw_values), std::move(tag));
}

Game Game::FromRaw(std::vector<double> raw_values, std::string tag) {
  const int d = std::countr_zero(raw_values.size());
  if (raw_values.empty() || std::popcount(raw_values.size()) != 1) {
    ThrowValidation("value table length must be a power of two");
  }
  std::vector<std::string> labels;
  for (int i = 0; i < d; ++i) labels.push_back(std::to_string(i + 1));
  return FromRaw(std::move(labels), std::move(raw_values), std::move(tag));
}

std::optional<int> Game::IndexOf(std::string_view label) const {
  for (int i = 0; i < num_players(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

double ShapleyWeight(int coalition_size, int num_players) {
  if (num_players < 1 || num_players > Game::kMaxPlayers) {
    ThrowInvalidArgument("player count must lie in [1, " +
                         std::to_string(Game::kMaxPlayers) + "]");
  }
  if (coalition_size < 0 || coalition_size >= num_players) {
    ThrowInvalidArgument("coalition size " + std::to_string(coalition_size) +
                         " must lie in [0, " +
                         std::to_string(num_players - 1) + "]");
  }
  // d!/(s!(d-s-1)!) = d * binom(d-1, s) is an exact integer.
  const unsigned __int128 inverse =
      Factorial(num_players) /
      (Factorial(coalition_size) *
       Factorial(num_players - coalition_size - 1));
  return 1.0 / static_cast<double>(inverse);
}

double MarginalContribution(const Game& game, int player, Coalition s) {
  CheckPlayer(game, player);
  if (s.Contains(player)) {
    ThrowInvalidArgument("player " + std::to_string(player + 1) +
                         " already belongs to " + FormatCoalition(s));
  }
  if (!s.IsSubsetOf(game.full())) {
    ThrowInvalidArgument("coalition " + FormatCoalition(s) +
                         " is outside the player set");
  }
  return game.value(s.With(player)) - game.value(s);
}

namespace {

Attribution RequireFinite(Attribution attribution, const Game& game) {
  for (int i = 0; i < attribution.size(); ++i) {
    if (!std::isfinite(attribution.phi[i])) {
      ThrowNumeric("Shapley value of player " + game.label(i) +
                   " is not finite");
    }
  }
  return attribution;
}

}  // namespace

Attribution ExactShapley(const Game& game) {
  const int d = game.num_players();
  std::vector<double> weights(d);
  for (int s = 0; s < d; ++s) weights[s] = ShapleyWeight(s, d);

  Attribution out;
  out.phi.assign(d, 0.0);
  out.game_tag = game.tag();
  out.method = AttributionMethod::kExactSubset;

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (d < kParallelShapleyPlayers || hw == 1) {
    for (int i = 0; i < d; ++i) out.phi[i] = ShapleyForPlayer(game, i, weights);
    return RequireFinite(std::move(out), game);
  }
  // Each player's sum is computed by exactly one worker in a fixed order, so
  // the result does not depend on scheduling.
  std::atomic<int> next{0};
  std::vector<std::jthread> workers;
  const unsigned count = std::min<unsigned>(hw, static_cast<unsigned>(d));
  for (unsigned w = 0; w < count; ++w) {
    workers.emplace_back([&] {
      for (int i = next++; i < d; i = next++) {
        out.phi[i] = ShapleyForPlayer(game, i, weights);
      }
    });
  }
  workers.clear();
  return RequireFinite(std::move(out), game);
}

Attribution PermutationShapley(const Game& game) {
  const int d = game.num_players();
  if (d > kMaxPermutationPlayers) {
    ThrowCapacity("permutation enumeration supports at most " +
                  std::to_string(kMaxPermutationPlayers) + " players, got " +
                  std::to_string(d));
  }
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::vector<CompensatedSum> sums(d);
  uint64_t orderings = 0;
  do {
    Coalition s;
    for (int p : order) {
      sums[p].Add(game.value(s.With(p)) - game.value(s));
      s = s.With(p);
    }
    ++orderings;
  } while (std::next_permutation(order.begin(), order.end()));

  Attribution out;
  out.game_tag = game.tag();
  out.method = AttributionMethod::kPermutationOracle;
  for (int i = 0; i < d; ++i) {
    out.phi.push_back(sums[i].Total() / static_cast<double>(orderings));
  }
  return RequireFinite(std::move(out), game);
}

Game Restrict(const Game& game, int player) {
  CheckPlayer(game, player);
  const int d = game.num_players();
  if (d < 2) ThrowInvalidArgument("cannot restrict a 1-player game");
  std::vector<std::string> labels = game.labels();
  labels.erase(labels.begin() + player);
  const uint64_t size = uint64_t{1} << (d - 1);
  std::vector<double> raw(size);
  for (uint64_t m = 0; m < size; ++m) {
    raw[m] = game.raw_value(Coalition(InsertZeroBit(m, player)));
  }
  return Game::FromRaw(std::move(labels), std::move(raw),
                       game.tag() + "\\" + game.label(player));
}

Game AddGames(const Game& a, const Game& b) {
  CheckCompatible(a, b);
  std::vector<double> raw(a.num_coalitions());
  for (uint64_t s = 0; s < raw.size(); ++s) {
    raw[s] = a.raw_value(Coalition(s)) + b.raw_value(Coalition(s));
  }
  return Game::FromRaw(a.labels(), std::move(raw), a.tag() + "+" + b.tag());
}

Game ScaleGame(const Game& game, double factor) {
  if (!std::isfinite(factor)) ThrowInvalidArgument("scale factor must be finite");
  std::vector<double> raw(game.num_coalitions());
  for (uint64_t s = 0; s < raw.size(); ++s) {
    raw[s] = factor * game.raw_value(Coalition(s));
  }
  return Game::FromRaw(game.labels(), std::move(raw), game.tag());
}

Game WithDummy(const Game& game, std::string label) {
  const int d = game.num_players();
  if (d >= Game::kMaxPlayers) {
    ThrowCapacity("cannot add a player to a " + std::to_string(d) +
                  "-player game");
  }
  if (game.IndexOf(label)) {
    ThrowInvalidArgument("label \"" + label + "\" already in use");
  }
  std::vector<std::string> labels = game.labels();
  labels.push_back(std::move(label));
  const uint64_t size = game.num_coalitions();
  std::vector<double> raw(2 * size);
  for (uint64_t s = 0; s < size; ++s) {
    raw[s] = raw[s | size] = game.raw_value(Coalition(s));
  }
  return Game::FromRaw(std::move(labels), std::move(raw), game.tag());
}

MonotonicityResult CheckMonotonic(const Game& game, double slack) {
  const int d = game.num_players();
  for (uint64_t s = 0; s < game.num_coalitions(); ++s) {
    for (int i = 0; i < d; ++i) {
      const Coalition from(s);
      if (from.Contains(i)) continue;
      if (game.value(from) > game.value(from.With(i)) + slack) {
        return {.monotonic = false,
                .violation = LatticeEdge{.from = from, .player = i}};
      }
    }
  }
  return {};
}

std::string FormatCoalition(Coalition s) {
  std::string out = "{";
  bool first = true;
  for (int p : s.Members()) {
    if (!first) out += ",";
    out += std::to_string(p + 1);
    first = false;
  }
  return out + "}";
}

std::string FormatCoalition(const Game& game, Coalition s) {
  std::string out = "{";
  bool first = true;
  for (int p : s.Members()) {
    if (!first) out += ",";
    out += game.label(p);
    first = false;
  }
  return out + "}";
}

}  // namespace shapaudit

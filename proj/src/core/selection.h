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

#ifndef SHAPAUDIT_CORE_SELECTION_H_
#define SHAPAUDIT_CORE_SELECTION_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/coalition.h"
#include "core/game.h"
#include "json.hpp"

namespace shapaudit {

inline constexpr double kPathologyTolerance = 1e-9;

// Attribution values within kTieTolerance * max_i |phi_i| of each other are
// ties for ranking purposes, so that round-off between players the game
// treats identically cannot reorder them.
inline constexpr double kTieTolerance = 1e-12;

enum class SelectionRule { kTopK, kThreshold };

struct SelectionResult {
  Coalition selected;
  SelectionRule rule = SelectionRule::kTopK;
  double parameter = 0.0;  // k for top-k, tau for threshold.
  std::string attribution_tag;
};

// The k players with the largest phi; ties go to the lower player index.
// Requires 1 <= k <= d.
SelectionResult TopK(const Attribution& attribution, int k);

// Players with phi_i > tau.
SelectionResult Threshold(const Attribution& attribution, double tau);

struct OptimalCoalitions {
  double best_value = 0.0;
  // Coalitions within tol * max(1, |best|) of the best value, ascending by
  // bitmask.
  std::vector<Coalition> argmax;
  // The argmax coalitions of minimum cardinality; minimal.front() is the
  // canonical witness.
  std::vector<Coalition> minimal;
};

// Argmax of C over coalitions of exactly `size` members, or over all
// coalitions when size is nullopt.
OptimalCoalitions FindOptimalCoalitions(const Game& game,
                                        std::optional<int> size = std::nullopt,
                                        double tol = kPathologyTolerance);

// max_{|S|=k} C(S) - C(TopK(ExactShapley(game), k)). Never negative.
double SelectionRegret(const Game& game, int k);

struct TaxicabFlag {
  int player = 0;
  Coalition witness;  // Minimal optimal coalition excluding the player.
};

// Players with phi_i > tol that some minimal optimal coalition O excludes
// while M_i(O) <= tol: valued by the attribution yet useless to the optimum.
std::vector<TaxicabFlag> DetectTaxicab(const Game& game,
                                       const Attribution& attribution,
                                       double tol = kPathologyTolerance);

struct SecretHolderFlags {
  // (i, j): i lies in every size-k optimum, phi_i < phi_j, and j lies in no
  // size-k optimum.
  std::vector<std::pair<int, int>> strict;
  // As strict, but j need only be missing from at least one size-k optimum.
  std::vector<std::pair<int, int>> relaxed;
};

SecretHolderFlags DetectSecretHolder(const Game& game,
                                     const Attribution& attribution, int k,
                                     double tol = kPathologyTolerance);

// For three players: phi_2 > phi_1, phi_3 > phi_1, C({1,2}) > C({2,3}) and
// C({1,3}) > C({2,3}), all strict.
bool InteractionPathology(const Game& game, const Attribution& attribution);

// True iff the top-|boundary| selection differs from `boundary`.
bool MarkovRankViolation(const Attribution& attribution, Coalition boundary);

// max(0, max_S C(S) - C(F)).
double EfficiencyWaste(const Game& game);

// C'(S) = C(S) - lambda |S|.
Game Penalize(const Game& game, double lambda);

struct PathologyReport {
  std::vector<TaxicabFlag> taxicab_flags;
  SecretHolderFlags secret_flags;
  std::optional<bool> markov_violation;  // Set when a boundary is supplied.
  double efficiency_waste = 0.0;

  OptimalCoalitions optima;
  int k = 0;
  double regret = 0.0;
  std::optional<bool> interaction_pathology;  // Three-player games only.
};

PathologyReport AnalyzePathologies(const Game& game,
                                   const Attribution& attribution, int k,
                                   std::optional<Coalition> boundary,
                                   double tol = kPathologyTolerance);

nlohmann::ordered_json ToJson(const PathologyReport& report, const Game& game);

}  // namespace shapaudit

#endif  // SHAPAUDIT_CORE_SELECTION_H_

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

#ifndef SHAPAUDIT_CORE_AXIOM_AUDIT_H_
#define SHAPAUDIT_CORE_AXIOM_AUDIT_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/coalition.h"
#include "core/game.h"
#include "json.hpp"

namespace shapaudit {

// Evidence that a computed attribution breaks one of the axioms.
struct AxiomWitness {
  std::string check;
  std::vector<int> players;
  std::optional<Coalition> coalition;
  double value = 0.0;
};

struct AxiomReport {
  double efficiency_residual = 0.0;
  std::vector<int> null_players;
  std::vector<std::pair<int, int>> symmetric_pairs;
  // Present only when a second game was supplied.
  std::optional<double> additivity_residual;
  double balanced_residual = 0.0;
  std::vector<AxiomWitness> witnesses;
};

// |Σ phi - C(F)|.
double CheckEfficiency(const Game& game, const Attribution& attribution);

// Players with |C(S ∪ {i}) - C(S)| <= tol for every S ⊆ F \ {i}.
std::vector<int> FindNullPlayers(const Game& game,
                                 double tol = kIdentityTolerance);

// Pairs i < j with |C(S ∪ {i}) - C(S ∪ {j})| <= tol for every S ⊆ F \ {i,j}.
std::vector<std::pair<int, int>> FindSymmetricPairs(
    const Game& game, double tol = kIdentityTolerance);

// max_i |phi_i(a+b) - phi_i(a) - phi_i(b)|.
double CheckAdditivity(const Game& a, const Game& b);

// max over pairs of |(phi_i(C) - phi_i(C_j)) - (phi_j(C) - phi_j(C_i))|, where
// C_k is the game restricted to F \ {k}. Zero for one-player games.
double CheckBalancedContributions(const Game& game);

// Runs every check on the exact Shapley value of `game`. Witnesses are recorded
// for residuals above tol * max(1, |C(F)|), for null players whose value
// exceeds d * tol, and for symmetric pairs whose values differ by more than
// 2^d * tol.
AxiomReport AuditAll(const Game& game, const Game* other = nullptr,
                     double tol = kIdentityTolerance);

nlohmann::ordered_json ToJson(const AxiomReport& report, const Game& game);

}  // namespace shapaudit

#endif  // SHAPAUDIT_CORE_AXIOM_AUDIT_H_

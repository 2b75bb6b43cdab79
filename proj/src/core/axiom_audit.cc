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

#include "core/axiom_audit.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/compensated_sum.h"
#include "core/error.h"

namespace shapaudit {
namespace {

double Scale(const Game& game) {
  return std::max(1.0, std::fabs(game.value(game.full())));
}

// Index of `player` inside the game restricted to F \ {removed}.
int RestrictedIndex(int player, int removed) {
  return player < removed ? player : player - 1;
}

}  // namespace

double CheckEfficiency(const Game& game, const Attribution& attribution) {
  if (attribution.size() != game.num_players()) {
    ThrowInvalidArgument("attribution has " +
                         std::to_string(attribution.size()) +
                         " entries for a " +
                         std::to_string(game.num_players()) + "-player game");
  }
  CompensatedSum sum;
  for (double v : attribution.phi) sum.Add(v);
  return std::fabs(sum.Total() - game.value(game.full()));
}

std::vector<int> FindNullPlayers(const Game& game, double tol) {
  if (!(tol >= 0)) ThrowInvalidArgument("tolerance must be non-negative");
  std::vector<int> out;
  for (int i = 0; i < game.num_players(); ++i) {
    bool is_null = true;
    for (uint64_t s = 0; s < game.num_coalitions() && is_null; ++s) {
      const Coalition c(s);
      if (c.Contains(i)) continue;
      is_null = std::fabs(game.value(c.With(i)) - game.value(c)) <= tol;
    }
    if (is_null) out.push_back(i);
  }
  return out;
}

std::vector<std::pair<int, int>> FindSymmetricPairs(const Game& game,
                                                    double tol) {
  if (!(tol >= 0)) ThrowInvalidArgument("tolerance must be non-negative");
  std::vector<std::pair<int, int>> out;
  const int d = game.num_players();
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      bool symmetric = true;
      for (uint64_t s = 0; s < game.num_coalitions() && symmetric; ++s) {
        const Coalition c(s);
        if (c.Contains(i) || c.Contains(j)) continue;
        symmetric =
            std::fabs(game.value(c.With(i)) - game.value(c.With(j))) <= tol;
      }
      if (symmetric) out.emplace_back(i, j);
    }
  }
  return out;
}

double CheckAdditivity(const Game& a, const Game& b) {
  const Game sum = AddGames(a, b);
  const Attribution pa = ExactShapley(a);
  const Attribution pb = ExactShapley(b);
  const Attribution ps = ExactShapley(sum);
  double residual = 0.0;
  for (int i = 0; i < a.num_players(); ++i) {
    residual = std::max(residual, std::fabs(ps.phi[i] - pa.phi[i] - pb.phi[i]));
  }
  return residual;
}

double CheckBalancedContributions(const Game& game) {
  const int d = game.num_players();
  if (d < 2) return 0.0;
  const Attribution full = ExactShapley(game);
  std::vector<Attribution> restricted;
  restricted.reserve(d);
  for (int j = 0; j < d; ++j) restricted.push_back(ExactShapley(Restrict(game, j)));
  double residual = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double lhs = full.phi[i] - restricted[j].phi[RestrictedIndex(i, j)];
      const double rhs = full.phi[j] - restricted[i].phi[RestrictedIndex(j, i)];
      residual = std::max(residual, std::fabs(lhs - rhs));
    }
  }
  return residual;
}

AxiomReport AuditAll(const Game& game, const Game* other, double tol) {
  AxiomReport report;
  const int d = game.num_players();
  const double threshold = tol * Scale(game);
  const Attribution phi = ExactShapley(game);

  report.efficiency_residual = CheckEfficiency(game, phi);
  if (report.efficiency_residual > threshold) {
    report.witnesses.push_back({.check = "efficiency",
                                .players = {},
                                .coalition = game.full(),
                                .value = report.efficiency_residual});
  }

  report.null_players = FindNullPlayers(game, tol);
  for (int i : report.null_players) {
    if (std::fabs(phi.phi[i]) > d * tol) {
      report.witnesses.push_back(
          {.check = "null_player", .players = {i}, .coalition = std::nullopt, .value = phi.phi[i]});
    }
  }

  report.symmetric_pairs = FindSymmetricPairs(game, tol);
  const double symmetric_bound = std::ldexp(tol, d);
  for (auto [i, j] : report.symmetric_pairs) {
    const double gap = std::fabs(phi.phi[i] - phi.phi[j]);
    if (gap > symmetric_bound) {
      report.witnesses.push_back(
          {.check = "symmetry", .players = {i, j}, .coalition = std::nullopt, .value = gap});
    }
  }

  if (other != nullptr) {
    report.additivity_residual = CheckAdditivity(game, *other);
    if (*report.additivity_residual > threshold) {
      report.witnesses.push_back({.check = "additivity",
                                  .players = {},
                                  .coalition = std::nullopt,
                                  .value = *report.additivity_residual});
    }
  }

  report.balanced_residual = CheckBalancedContributions(game);
  if (report.balanced_residual > threshold) {
    report.witnesses.push_back({.check = "balanced_contributions",
                                .players = {},
                                .coalition = std::nullopt,
                                .value = report.balanced_residual});
  }
  return report;
}

nlohmann::ordered_json ToJson(const AxiomReport& report, const Game& game) {
  using nlohmann::ordered_json;
  ordered_json out;
  out["efficiency_residual"] = report.efficiency_residual;
  ordered_json nulls = ordered_json::array();
  for (int i : report.null_players) nulls.push_back(game.label(i));
  out["null_players"] = nulls;
  ordered_json pairs = ordered_json::array();
  for (auto [i, j] : report.symmetric_pairs) {
    pairs.push_back({game.label(i), game.label(j)});
  }
  out["symmetric_pairs"] = pairs;
  out["additivity_residual"] = report.additivity_residual
                                   ? ordered_json(*report.additivity_residual)
                                   : ordered_json(nullptr);
  out["balanced_residual"] = report.balanced_residual;
  ordered_json witnesses = ordered_json::array();
  for (const auto& w : report.witnesses) {
    ordered_json item;
    item["check"] = w.check;
    ordered_json players = ordered_json::array();
    for (int p : w.players) players.push_back(game.label(p));
    item["players"] = players;
    item["coalition"] = w.coalition
                            ? ordered_json(FormatCoalition(game, *w.coalition))
                            : ordered_json(nullptr);
    item["value"] = w.value;
    witnesses.push_back(item);
  }
  out["witnesses"] = witnesses;
  return out;
}

}  // namespace shapaudit

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

#include "core/selection.h"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.h"

namespace shapaudit {
namespace {

void CheckK(int k, int d) {
  if (k < 1 || k > d) {
    ThrowInvalidArgument("k = " + std::to_string(k) + " must lie in [1, " +
                         std::to_string(d) + "]");
  }
}

nlohmann::ordered_json Labels(const Game& game, Coalition s) {
  auto out = nlohmann::ordered_json::array();
  for (int p : s.Members()) out.push_back(game.label(p));
  return out;
}

nlohmann::ordered_json PairsJson(const Game& game,
                                 const std::vector<std::pair<int, int>>& pairs) {
  auto out = nlohmann::ordered_json::array();
  for (auto [i, j] : pairs) {
    out.push_back({{"undervalued", game.label(i)},
                   {"overvalued", game.label(j)}});
  }
  return out;
}

}  // namespace

SelectionResult TopK(const Attribution& attribution, int k) {
  const int d = attribution.size();
  CheckK(k, d);
  double scale = DBL_MIN;
  for (double v : attribution.phi) scale = std::max(scale, std::fabs(v));
  const double tie = kTieTolerance * scale;

  Coalition chosen;
  for (int round = 0; round < k; ++round) {
    int best = -1;
    for (int i = 0; i < d; ++i) {
      if (chosen.Contains(i)) continue;
      if (best < 0 || attribution.phi[i] > attribution.phi[best] + tie) best = i;
    }
    chosen = chosen.With(best);
  }
  return {.selected = chosen,
          .rule = SelectionRule::kTopK,
          .parameter = static_cast<double>(k),
          .attribution_tag = attribution.game_tag};
}

SelectionResult Threshold(const Attribution& attribution, double tau) {
  Coalition chosen;
  for (int i = 0; i < attribution.size(); ++i) {
    if (attribution.phi[i] > tau) chosen = chosen.With(i);
  }
  return {.selected = chosen,
          .rule = SelectionRule::kThreshold,
          .parameter = tau,
          .attribution_tag = attribution.game_tag};
}

OptimalCoalitions FindOptimalCoalitions(const Game& game,
                                        std::optional<int> size, double tol) {
  const int d = game.num_players();
  if (size && (*size < 0 || *size > d)) {
    ThrowInvalidArgument("coalition size " + std::to_string(*size) +
                         " must lie in [0, " + std::to_string(d) + "]");
  }
  auto eligible = [&](uint64_t s) {
    return !size || std::popcount(s) == *size;
  };
  OptimalCoalitions out;
  out.best_value = -std::numeric_limits<double>::infinity();
  for (uint64_t s = 0; s < game.num_coalitions(); ++s) {
    if (eligible(s)) out.best_value = std::max(out.best_value, game.value(Coalition(s)));
  }
  const double cutoff =
      out.best_value - tol * std::max(1.0, std::fabs(out.best_value));
  int min_size = d + 1;
  for (uint64_t s = 0; s < game.num_coalitions(); ++s) {
    if (eligible(s) && game.value(Coalition(s)) >= cutoff) {
      out.argmax.emplace_back(s);
      min_size = std::min(min_size, std::popcount(s));
    }
  }
  for (Coalition c : out.argmax) {
    if (c.size() == min_size) out.minimal.push_back(c);
  }
  return out;
}

double SelectionRegret(const Game& game, int k) {
  CheckK(k, game.num_players());
  const OptimalCoalitions best = FindOptimalCoalitions(game, k, 0.0);
  const SelectionResult pick = TopK(ExactShapley(game), k);
  return std::max(0.0, best.best_value - game.value(pick.selected));
}

std::vector<TaxicabFlag> DetectTaxicab(const Game& game,
                                       const Attribution& attribution,
                                       double tol) {
  if (attribution.size() != game.num_players()) {
    ThrowInvalidArgument("attribution does not match the game");
  }
  const OptimalCoalitions optima = FindOptimalCoalitions(game, std::nullopt, tol);
  std::vector<TaxicabFlag> flags;
  for (int i = 0; i < game.num_players(); ++i) {
    if (!(attribution.phi[i] > tol)) continue;
    for (Coalition o : optima.minimal) {
      if (o.Contains(i)) continue;
      if (game.value(o.With(i)) - game.value(o) <= tol) {
        flags.push_back({.player = i, .witness = o});
        break;
      }
    }
  }
  return flags;
}

SecretHolderFlags DetectSecretHolder(const Game& game,
                                     const Attribution& attribution, int k,
                                     double tol) {
  const int d = game.num_players();
  CheckK(k, d);
  if (attribution.size() != d) {
    ThrowInvalidArgument("attribution does not match the game");
  }
  const OptimalCoalitions optima = FindOptimalCoalitions(game, k, tol);
  std::vector<int> membership(d, 0);
  for (Coalition o : optima.argmax) {
    for (int p : o.Members()) ++membership[p];
  }
  const int count = static_cast<int>(optima.argmax.size());
  SecretHolderFlags flags;
  for (int i = 0; i < d; ++i) {
    if (membership[i] != count) continue;
    for (int j = 0; j < d; ++j) {
      if (j == i || !(attribution.phi[j] - attribution.phi[i] > tol)) continue;
      if (membership[j] < count) flags.relaxed.emplace_back(i, j);
      if (membership[j] == 0) flags.strict.emplace_back(i, j);
    }
  }
  return flags;
}

bool InteractionPathology(const Game& game, const Attribution& attribution) {
  if (game.num_players() != 3 || attribution.size() != 3) {
    ThrowInvalidArgument("the three-player predicate needs d = 3");
  }
  const auto& phi = attribution.phi;
  const double c23 = game.value(Coalition::Of({1, 2}));
  return phi[1] > phi[0] && phi[2] > phi[0] &&
         game.value(Coalition::Of({0, 1})) > c23 &&
         game.value(Coalition::Of({0, 2})) > c23;
}

bool MarkovRankViolation(const Attribution& attribution, Coalition boundary) {
  if (boundary.empty()) ThrowInvalidArgument("boundary must be non-empty");
  if (!boundary.IsSubsetOf(Coalition::Full(attribution.size()))) {
    ThrowInvalidArgument("boundary names players outside the attribution");
  }
  return TopK(attribution, boundary.size()).selected != boundary;
}

double EfficiencyWaste(const Game& game) {
  double best = game.value(game.full());
  for (uint64_t s = 0; s < game.num_coalitions(); ++s) {
    best = std::max(best, game.value(Coalition(s)));
  }
  return best - game.value(game.full());
}

Game Penalize(const Game& game, double lambda) {
  if (!(lambda >= 0) || !std::isfinite(lambda)) {
    ThrowInvalidArgument("penalty must be finite and non-negative");
  }
  std::vector<double> raw(game.num_coalitions());
  for (uint64_t s = 0; s < raw.size(); ++s) {
    raw[s] = game.raw_value(Coalition(s)) - lambda * std::popcount(s);
  }
  return Game::FromRaw(game.labels(), std::move(raw),
                       game.tag() + "-penalized");
}

PathologyReport AnalyzePathologies(const Game& game,
                                   const Attribution& attribution, int k,
                                   std::optional<Coalition> boundary,
                                   double tol) {
  PathologyReport report;
  report.taxicab_flags = DetectTaxicab(game, attribution, tol);
  report.secret_flags = DetectSecretHolder(game, attribution, k, tol);
  if (boundary) report.markov_violation = MarkovRankViolation(attribution, *boundary);
  report.efficiency_waste = EfficiencyWaste(game);
  report.optima = FindOptimalCoalitions(game, std::nullopt, tol);
  report.k = k;
  report.regret = SelectionRegret(game, k);
  if (game.num_players() == 3) report.interaction_pathology = InteractionPathology(game, attribution);
  return report;
}

nlohmann::ordered_json ToJson(const PathologyReport& report, const Game& game) {
  using nlohmann::ordered_json;
  ordered_json out;
  auto taxicab = ordered_json::array();
  for (const auto& f : report.taxicab_flags) taxicab.push_back(game.label(f.player));
  out["taxicab_flags"] = taxicab;
  out["secret_flags"] = {{"strict", PairsJson(game, report.secret_flags.strict)},
                         {"relaxed", PairsJson(game, report.secret_flags.relaxed)}};
  out["markov_violation"] = report.markov_violation
                                ? ordered_json(*report.markov_violation)
                                : ordered_json(nullptr);
  out["efficiency_waste"] = report.efficiency_waste;

  ordered_json details;
  details["taxicab_predicate"] =
      "phi_i > tol and M_i(O) <= tol for a minimal optimal coalition O "
      "excluding i";
  details["optimum_value"] = report.optima.best_value;
  auto minimal = ordered_json::array();
  for (Coalition c : report.optima.minimal) minimal.push_back(Labels(game, c));
  details["minimal_optima"] = minimal;
  auto witnesses = ordered_json::array();
  for (const auto& f : report.taxicab_flags) {
    witnesses.push_back({{"player", game.label(f.player)},
                         {"optimum", Labels(game, f.witness)}});
  }
  details["taxicab_witnesses"] = witnesses;
  details["k"] = report.k;
  details["selection_regret"] = report.regret;
  details["interaction_pathology"] =
      report.interaction_pathology ? ordered_json(*report.interaction_pathology) : ordered_json(nullptr);
  out["details"] = details;
  return out;
}

}  // namespace shapaudit

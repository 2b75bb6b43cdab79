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

#include "core/toy_games.h"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "core/error.h"

namespace shapaudit {
namespace {

std::string NamedCoalition(const std::vector<std::string>& players,
                           uint64_t bits) {
  std::string label = "{";
  bool first = true;
  for (int p : Coalition(bits).Members()) {
    label += (first ? "" : ",") + players[p];
    first = false;
  }
  return label + "}";
}

}  // namespace

Game TaxicabGame() {
  std::vector<double> raw(8);
  for (uint64_t s = 0; s < 8; ++s) {
    const Coalition c(s);
    if (c.Contains(2)) {
      raw[s] = 10;
    } else if (c.Contains(1)) {
      raw[s] = 7;
    } else if (c.Contains(0)) {
      raw[s] = 3;
    }
  }
  return Game::FromRaw(std::move(raw), "taxicab");
}

Game SecretHolderGame() {
  std::vector<double> raw(8);
  raw[Coalition::Of({0}).bits()] = 0;
  raw[Coalition::Of({1}).bits()] = 7;
  raw[Coalition::Of({2}).bits()] = 7;
  raw[Coalition::Of({0, 1}).bits()] = 10;
  raw[Coalition::Of({0, 2}).bits()] = 10;
  raw[Coalition::Of({1, 2}).bits()] = 7;
  raw[Coalition::Of({0, 1, 2}).bits()] = 10;
  return Game::FromRaw(std::move(raw), "secret_holder");
}

Game GameFromJson(const nlohmann::json& doc) {
  if (!doc.is_object()) ThrowValidation("game file must be a JSON object");
  for (const auto& [key, unused] : doc.items()) {
    if (key != "players" && key != "coalitions") {
      ThrowValidation("unknown top-level key \"" + key + "\"");
    }
  }
  if (!doc.contains("players") || !doc["players"].is_array()) {
    ThrowValidation("\"players\" must be an array of names");
  }
  if (!doc.contains("coalitions") || !doc["coalitions"].is_array()) {
    ThrowValidation("\"coalitions\" must be an array");
  }

  std::vector<std::string> players;
  std::map<std::string, int> index;
  for (const auto& p : doc["players"]) {
    if (!p.is_string()) ThrowValidation("player names must be strings");
    const std::string name = p.get<std::string>();
    if (!index.emplace(name, static_cast<int>(players.size())).second) {
      ThrowValidation("duplicate player \"" + name + "\"");
    }
    players.push_back(name);
  }
  const int d = static_cast<int>(players.size());
  if (d > Game::kMaxPlayers) {
    ThrowCapacity("game file lists " + std::to_string(d) +
                  " players; at most " + std::to_string(Game::kMaxPlayers) +
                  " are supported");
  }
  if (d == 0) ThrowValidation("game file lists no players");

  const uint64_t total = uint64_t{1} << d;
  std::vector<double> raw(total, 0.0);
  std::vector<bool> present(total, false);
  for (const auto& entry : doc["coalitions"]) {
    if (!entry.is_object() || !entry.contains("members") ||
        !entry["members"].is_array() || !entry.contains("value")) {
      ThrowValidation("each coalition needs \"members\" and \"value\"");
    }
    uint64_t bits = 0;
    for (const auto& m : entry["members"]) {
      if (!m.is_string()) ThrowValidation("member names must be strings");
      const auto it = index.find(m.get<std::string>());
      if (it == index.end()) {
        ThrowValidation("unknown member \"" + m.get<std::string>() + "\"");
      }
      const uint64_t bit = uint64_t{1} << it->second;
      if (bits & bit) {
        ThrowValidation("member \"" + it->first + "\" repeated in coalition");
      }
      bits |= bit;
    }
    const std::string label = NamedCoalition(players, bits);
    if (present[bits]) ThrowValidation("duplicate coalition " + label);
    const auto& v = entry["value"];
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      ThrowValidation("non-finite value for coalition " + label);
    }
    raw[bits] = v.get<double>();
    present[bits] = true;
  }
  for (uint64_t s = 0; s < total; ++s) {
    if (!present[s]) {
      ThrowValidation("missing coalition " + NamedCoalition(players, s));
    }
  }
  return Game::FromRaw(std::move(players), std::move(raw), "file");
}

nlohmann::ordered_json GameToJson(const Game& game) {
  nlohmann::ordered_json doc;
  doc["players"] = game.labels();
  auto coalitions = nlohmann::ordered_json::array();
  for (uint64_t s = 0; s < game.num_coalitions(); ++s) {
    nlohmann::ordered_json entry;
    auto members = nlohmann::ordered_json::array();
    for (int p : Coalition(s).Members()) members.push_back(game.label(p));
    entry["members"] = members;
    entry["value"] = game.raw_value(Coalition(s));
    coalitions.push_back(entry);
  }
  doc["coalitions"] = coalitions;
  return doc;
}

Game LoadGame(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) ThrowIo("cannot open game file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    ThrowValidation("malformed JSON in " + path.string() + ": " + e.what());
  }
  return GameFromJson(doc);
}

void SaveGame(const Game& game, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) ThrowIo("cannot write game file " + path.string());
  out << GameToJson(game).dump(2) << "\n";
  if (!out) ThrowIo("write failed for " + path.string());
}

}  // namespace shapaudit

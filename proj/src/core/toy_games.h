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

#ifndef SHAPAUDIT_CORE_TOY_GAMES_H_
#define SHAPAUDIT_CORE_TOY_GAMES_H_

#include <filesystem>
#include <string>

#include "core/game.h"
#include "json.hpp"

namespace shapaudit {

// Three players; C(S) = 10 if 3 ∈ S, else 7 if 2 ∈ S, else 3 if 1 ∈ S, else 0.
// Player 3 alone already attains the maximum.
Game TaxicabGame();

// Three players; player 1 is worthless alone but lifts any partner to the
// maximum of 10, while {2,3} only reaches 7.
Game SecretHolderGame();

// Game files are JSON objects
//
//   {"players": ["a", "b"],
//    "coalitions": [{"members": [], "value": 0.0},
//                   {"members": ["a"], "value": 1.5}, ...]}
//
// listing all 2^d coalitions exactly once, members given by player name.
// Unknown top-level keys are rejected. Values are written as raw worths (the
// offset re-added) using the shortest decimal that round-trips binary64.
Game GameFromJson(const nlohmann::json& doc);
nlohmann::ordered_json GameToJson(const Game& game);

Game LoadGame(const std::filesystem::path& path);
void SaveGame(const Game& game, const std::filesystem::path& path);

}  // namespace shapaudit

#endif  // SHAPAUDIT_CORE_TOY_GAMES_H_

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

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "core/error.h"
#include "core/game.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace shapaudit {
namespace {

using nlohmann::json;

json ThreePlayerDoc(double empty_value) {
  json doc = json::parse(R"({"players": ["a", "b", "c"], "coalitions": [
      {"members": [], "value": 0},
      {"members": ["a"], "value": 1},
      {"members": ["b"], "value": 2},
      {"members": ["a", "b"], "value": 3},
      {"members": ["c"], "value": 4},
      {"members": ["a", "c"], "value": 5},
      {"members": ["b", "c"], "value": 6},
      {"members": ["a", "b", "c"], "value": 7}]})");
  doc["coalitions"][0]["value"] = empty_value;
  return doc;
}

std::string ErrorMessage(const json& doc) {
  try {
    GameFromJson(doc);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
    return e.what();
  }
  ADD_FAILURE() << "expected a validation error";
  return "";
}

TEST(TaxicabGameTest, Values) {
  Game g = TaxicabGame();
  EXPECT_EQ(g.value(Coalition::Of({0, 1})), 7.0);
  EXPECT_EQ(g.value(Coalition::Of({2})), 10.0);
  EXPECT_EQ(g.value(Coalition()), 0.0);
}

TEST(SecretHolderGameTest, Values) {
  Game g = SecretHolderGame();
  EXPECT_EQ(g.value(Coalition::Of({0})), 0.0);
  EXPECT_EQ(g.value(Coalition::Of({1, 2})), 7.0);
  EXPECT_EQ(g.value(g.full()), 10.0);
}

TEST(GameFromJsonTest, ParsesLabelsAndValues) {
  Game g = GameFromJson(ThreePlayerDoc(0.0));
  EXPECT_EQ(g.labels(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(g.value(Coalition::Of({0, 2})), 5.0);
}

TEST(GameFromJsonTest, NormalizesNonZeroEmptyValue) {
  Game g = GameFromJson(ThreePlayerDoc(0.5));
  EXPECT_EQ(g.offset(), 0.5);
  EXPECT_EQ(g.value(Coalition()), 0.0);
  EXPECT_EQ(g.value(Coalition::Of({0})), 0.5);
  EXPECT_EQ(g.value(g.full()), 6.5);
}

TEST(GameFromJsonTest, MissingCoalition) {
  json doc = ThreePlayerDoc(0.0);
  doc["coalitions"].erase(5);  // {a, c}
  std::string message = ErrorMessage(doc);
  EXPECT_NE(message.find("missing coalition"), std::string::npos) << message;
  EXPECT_NE(message.find("{a,c}"), std::string::npos) << message;
}

TEST(GameFromJsonTest, RejectsMalformedInput) {
  json doc = ThreePlayerDoc(0.0);
  doc["coalitions"][3]["members"] = {"a", "a"};
  ErrorMessage(doc);

  doc = ThreePlayerDoc(0.0);
  doc["coalitions"][3]["members"] = {"a", "z"};
  EXPECT_NE(ErrorMessage(doc).find("unknown member"), std::string::npos);

  doc = ThreePlayerDoc(0.0);
  doc["coalitions"][3]["members"] = {"a"};
  EXPECT_NE(ErrorMessage(doc).find("duplicate coalition"), std::string::npos);

  doc = ThreePlayerDoc(0.0);
  doc["extra"] = 1;
  ErrorMessage(doc);

  doc = ThreePlayerDoc(0.0);
  doc["players"] = {"a", "a", "c"};
  ErrorMessage(doc);
}

TEST(GameFromJsonTest, TooManyPlayers) {
  json doc;
  doc["players"] = json::array();
  for (int i = 0; i < 26; ++i) doc["players"].push_back("p" + std::to_string(i));
  doc["coalitions"] = json::array();
  try {
    GameFromJson(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacity);
  }
}

class GameFileTest : public ::testing::Test {
 protected:
  std::filesystem::path Path(const std::string& name) {
    return std::filesystem::temp_directory_path() /
           ("shapaudit_toy_" + std::to_string(::getpid()) + "_" + name);
  }
};

TEST_F(GameFileTest, RoundTripIsBitExact) {
  std::vector<double> raw = {0.1, 0.1 + 1.0 / 3.0, 2.0 / 7.0, 1e-300,
                             -5.5, 3.141592653589793, 1e17, 0.30000000000000004};
  Game g = Game::FromRaw({"x", "y", "z"}, raw, "custom");
  auto path = Path("roundtrip.json");
  SaveGame(g, path);
  Game h = LoadGame(path);
  std::filesystem::remove(path);
  EXPECT_EQ(h.labels(), g.labels());
  for (uint64_t s = 0; s < 8; ++s) {
    EXPECT_EQ(h.raw_value(Coalition(s)), g.raw_value(Coalition(s)));
    EXPECT_EQ(h.value(Coalition(s)), g.value(Coalition(s)));
  }
}

TEST_F(GameFileTest, TaxicabRoundTrip) {
  auto path = Path("taxicab.json");
  SaveGame(TaxicabGame(), path);
  Game h = LoadGame(path);
  std::filesystem::remove(path);
  for (uint64_t s = 0; s < 8; ++s) {
    EXPECT_EQ(h.value(Coalition(s)), TaxicabGame().value(Coalition(s)));
  }
}

TEST_F(GameFileTest, MissingFileAndBadJson) {
  try {
    LoadGame(Path("does_not_exist.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  auto path = Path("bad.json");
  std::ofstream(path) << "{not json";
  try {
    LoadGame(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
  }
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace shapaudit

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
#include <cmath>
#include <numeric>
#include <vector>

#include "core/error.h"
#include "core/toy_games.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace shapaudit {
namespace {

using ::shapaudit::testing::RandomGame;
using ::shapaudit::testing::RandomMonotoneGame;
using ::shapaudit::testing::UnanimityGame2;

constexpr double kTol = 1e-9;

void ExpectPhi(const Attribution& attr, const std::vector<double>& expected,
               double tol = kTol) {
  ASSERT_EQ(attr.phi.size(), expected.size());
  for (size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(attr.phi[i], expected[i], tol) << "player " << i + 1;
  }
}

TEST(ShapleyWeightTest, MatchesFactorialFormula) {
  EXPECT_DOUBLE_EQ(ShapleyWeight(0, 3), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(ShapleyWeight(1, 3), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(ShapleyWeight(2, 3), 1.0 / 3.0);
}

TEST(ShapleyWeightTest, SumsToOneOverSubsets) {
  for (int d : {1, 4, 10, 25}) {
    double total = 0.0;
    for (int s = 0; s < d; ++s) {
      total += ShapleyWeight(s, d) * std::tgamma(d) /
               (std::tgamma(s + 1) * std::tgamma(d - s));
    }
    EXPECT_NEAR(total, 1.0, 1e-12) << "d=" << d;
  }
}

TEST(ShapleyWeightTest, RejectsFullSize) {
  EXPECT_THROW(ShapleyWeight(3, 3), Error);
}

TEST(MarginalContributionTest, TaxicabExamples) {
  Game g = TaxicabGame();
  EXPECT_DOUBLE_EQ(MarginalContribution(g, 2, Coalition::Of({0, 1})), 3.0);
  EXPECT_DOUBLE_EQ(MarginalContribution(g, 0, Coalition::Of({2})), 0.0);
}

TEST(MarginalContributionTest, RejectsMember) {
  EXPECT_THROW(MarginalContribution(TaxicabGame(), 0, Coalition::Of({0})),
               Error);
}

TEST(MarginalContributionTest, NonNegativeOnMonotoneGame) {
  Game g = RandomMonotoneGame(5, 3);
  for (int i = 0; i < 5; ++i) {
    for (uint64_t s = 0; s < 32; ++s) {
      if (Coalition(s).Contains(i)) continue;
      EXPECT_GE(MarginalContribution(g, i, Coalition(s)), 0.0);
    }
  }
}

TEST(ExactShapleyTest, ToyGames) {
  ExpectPhi(ExactShapley(TaxicabGame()), {1, 3, 6});
  ExpectPhi(ExactShapley(SecretHolderGame()), {2, 4, 4});
  ExpectPhi(ExactShapley(UnanimityGame2()), {0.5, 0.5});
}

TEST(ExactShapleyTest, SinglePlayer) {
  Game g = Game::FromRaw({1.0, 3.5}, "one");
  ExpectPhi(ExactShapley(g), {2.5});
  ExpectPhi(PermutationShapley(g), {2.5});
}

TEST(PermutationShapleyTest, Taxicab) {
  Attribution attr = PermutationShapley(TaxicabGame());
  EXPECT_EQ(attr.method, AttributionMethod::kPermutationOracle);
  ExpectPhi(attr, {1, 3, 6});
}

TEST(PermutationShapleyTest, AgreesWithExactOnRandomGames) {
  for (int k = 0; k < 50; ++k) {
    Game g = RandomGame(5, 1000 + k);
    Attribution exact = ExactShapley(g);
    Attribution oracle = PermutationShapley(g);
    for (int i = 0; i < 5; ++i) {
      EXPECT_NEAR(exact.phi[i], oracle.phi[i], kTol) << "game " << k;
    }
  }
}

TEST(PermutationShapleyTest, RejectsLargeGames) {
  EXPECT_THROW(PermutationShapley(RandomGame(9, 1)), Error);
}

TEST(ExactShapleyTest, ParallelPathMatchesEfficiency) {
  Game g = RandomGame(15, 7);
  Attribution attr = ExactShapley(g);
  double sum = std::accumulate(attr.phi.begin(), attr.phi.end(), 0.0);
  EXPECT_NEAR(sum, g.value(g.full()), 1e-9);
}

TEST(ExactShapleyTest, OffsetDoesNotChangeValues) {
  Game g = RandomGame(4, 11);
  std::vector<double> shifted(g.raw_values().begin(), g.raw_values().end());
  for (double& v : shifted) v += 123.25;
  Game h = Game::FromRaw(std::move(shifted), "shifted");
  EXPECT_DOUBLE_EQ(h.offset(), g.offset() + 123.25);
  Attribution a = ExactShapley(g);
  Attribution b = ExactShapley(h);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(a.phi[i], b.phi[i], 1e-12);
}

TEST(ExactShapleyTest, EquivariantUnderRelabeling) {
  Game g = RandomGame(4, 21);
  // Swap players 0 and 2.
  std::vector<double> raw(16);
  for (uint64_t s = 0; s < 16; ++s) {
    uint64_t b0 = s & 1, b2 = (s >> 2) & 1;
    uint64_t t = (s & ~uint64_t{5}) | (b0 << 2) | b2;
    raw[t] = g.raw_value(Coalition(s));
  }
  Attribution a = ExactShapley(g);
  Attribution b = ExactShapley(Game::FromRaw(std::move(raw), "swapped"));
  EXPECT_NEAR(a.phi[0], b.phi[2], 1e-12);
  EXPECT_NEAR(a.phi[2], b.phi[0], 1e-12);
  EXPECT_NEAR(a.phi[1], b.phi[1], 1e-12);
  EXPECT_NEAR(a.phi[3], b.phi[3], 1e-12);
}

TEST(RestrictTest, TaxicabWithoutThirdPlayer) {
  Game r = Restrict(TaxicabGame(), 2);
  ASSERT_EQ(r.num_players(), 2);
  EXPECT_DOUBLE_EQ(r.value(Coalition::Of({0})), 3.0);
  EXPECT_DOUBLE_EQ(r.value(Coalition::Of({1})), 7.0);
  EXPECT_DOUBLE_EQ(r.value(Coalition::Of({0, 1})), 7.0);
  ExpectPhi(ExactShapley(r), {1.5, 5.5});
}

TEST(RestrictTest, SecretHolderWithoutFirstPlayer) {
  Game r = Restrict(SecretHolderGame(), 0);
  EXPECT_EQ(r.labels(), (std::vector<std::string>{"2", "3"}));
  EXPECT_DOUBLE_EQ(r.value(Coalition::Of({0})), 7.0);
  EXPECT_DOUBLE_EQ(r.value(Coalition::Of({1})), 7.0);
  EXPECT_DOUBLE_EQ(r.value(Coalition::Of({0, 1})), 7.0);
  ExpectPhi(ExactShapley(r), {3.5, 3.5});
}

TEST(RestrictTest, Commutes) {
  Game g = RandomGame(5, 31);
  Game a = Restrict(Restrict(g, 3), 1);
  Game b = Restrict(Restrict(g, 1), 2);
  ASSERT_EQ(a.num_coalitions(), b.num_coalitions());
  for (uint64_t s = 0; s < a.num_coalitions(); ++s) {
    EXPECT_EQ(a.value(Coalition(s)), b.value(Coalition(s)));
  }
}

TEST(RestrictTest, RejectsSinglePlayer) {
  EXPECT_THROW(Restrict(Game::FromRaw({0.0, 1.0}, "one"), 0), Error);
}

TEST(LinearityTest, AddAndScale) {
  Game t = TaxicabGame();
  ExpectPhi(ExactShapley(AddGames(t, t)), {2, 6, 12});
  ExpectPhi(ExactShapley(ScaleGame(t, 0.0)), {0, 0, 0});
  ExpectPhi(ExactShapley(AddGames(t, SecretHolderGame())), {3, 7, 10});
}

TEST(LinearityTest, RandomCombination) {
  Game a = RandomGame(6, 41);
  Game b = RandomGame(6, 42);
  Attribution pa = ExactShapley(a);
  Attribution pb = ExactShapley(b);
  Attribution pc = ExactShapley(AddGames(ScaleGame(a, 2.5), b));
  for (int i = 0; i < 6; ++i) {
    EXPECT_NEAR(pc.phi[i], 2.5 * pa.phi[i] + pb.phi[i], 1e-12);
  }
}

TEST(LinearityTest, AddRejectsMismatch) {
  EXPECT_THROW(AddGames(TaxicabGame(), UnanimityGame2()), Error);
}

TEST(WithDummyTest, NullExtension) {
  Game g = WithDummy(TaxicabGame(), "4");
  ExpectPhi(ExactShapley(g), {1, 3, 6, 0});
  Game h = WithDummy(g, "5");
  ExpectPhi(ExactShapley(h), {1, 3, 6, 0, 0});
  EXPECT_THROW(WithDummy(g, "4"), Error);
}

TEST(MonotonicTest, ToyGamesAreMonotone) {
  EXPECT_TRUE(CheckMonotonic(TaxicabGame()).monotonic);
  EXPECT_TRUE(CheckMonotonic(SecretHolderGame()).monotonic);
}

TEST(MonotonicTest, ReportsViolatingEdge) {
  Game g = Game::FromRaw({0.0, 3.0, 0.0, 2.0}, "dip");
  MonotonicityResult r = CheckMonotonic(g);
  EXPECT_FALSE(r.monotonic);
  ASSERT_TRUE(r.violation.has_value());
  EXPECT_EQ(r.violation->from, Coalition::Of({0}));
  EXPECT_EQ(r.violation->player, 1);
}

TEST(GameTest, ValidatesConstruction) {
  EXPECT_THROW(Game::FromRaw({0.0, 1.0, 2.0}, "bad"), Error);
  EXPECT_THROW(Game::FromRaw({0.0, std::nan("")}, "bad"), Error);
  EXPECT_THROW(Game::FromRaw({"a", "a"}, {0, 0, 0, 0}, "bad"), Error);
  try {
    std::vector<std::string> labels;
    for (int i = 0; i < 26; ++i) labels.push_back("p" + std::to_string(i));
    Game::FromRaw(std::move(labels), {}, "big");
    FAIL() << "expected capacity error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacity);
  }
}

TEST(GameTest, FormatsCoalitions) {
  EXPECT_EQ(FormatCoalition(Coalition::Of({0, 2})), "{1,3}");
  EXPECT_EQ(FormatCoalition(Coalition()), "{}");
}

}  // namespace
}  // namespace shapaudit

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

#ifndef SHAPAUDIT_TESTS_TEST_UTIL_H_
#define SHAPAUDIT_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <vector>

#include "core/game.h"
#include "core/rng.h"

namespace shapaudit::testing {

// Uniform [-1, 1) values on every coalition, C(∅) included.
inline Game RandomGame(int d, uint64_t seed) {
  RandomStream stream(seed);
  std::vector<double> raw(size_t{1} << d);
  for (double& v : raw) v = 2.0 * stream.Uniform() - 1.0;
  return Game::FromRaw(std::move(raw), "random");
}

// Monotone by construction: C(S) = sum of non-negative weights over S plus a
// non-negative bonus that only grows with S.
inline Game RandomMonotoneGame(int d, uint64_t seed) {
  RandomStream stream(seed);
  std::vector<double> w(d);
  for (double& v : w) v = stream.Uniform();
  std::vector<double> raw(size_t{1} << d, 0.0);
  for (uint64_t s = 1; s < raw.size(); ++s) {
    Coalition c(s);
    double best = 0.0;
    for (int p : c.Members()) best = std::max(best, raw[c.Without(p).bits()]);
    double sum = 0.0;
    for (int p : c.Members()) sum += w[p];
    raw[s] = std::max(best, sum) + 0.1 * stream.Uniform();
  }
  return Game::FromRaw(std::move(raw), "random_monotone");
}

inline Game UnanimityGame2() {
  return Game::FromRaw({0.0, 0.0, 0.0, 1.0}, "unanimity");
}

}  // namespace shapaudit::testing

#endif  // SHAPAUDIT_TESTS_TEST_UTIL_H_

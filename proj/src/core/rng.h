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

#ifndef SHAPAUDIT_CORE_RNG_H_
#define SHAPAUDIT_CORE_RNG_H_

#include <cstdint>
#include <optional>
#include <random>

namespace shapaudit {

// SplitMix64 step: adds the golden-ratio increment to `x` and applies the
// SplitMix64 finalizer.
uint64_t MixBits(uint64_t x);

// Derives an independent 64-bit seed from (base, a, b):
//   MixBits(MixBits(MixBits(base) ^ a) ^ b).
// Sweeps use (base_seed, i, j) for grid cell (i, j); samplers use
// (seed, stream_tag, column) for per-column streams.
uint64_t DeriveSeed(uint64_t base, uint64_t a, uint64_t b = 0);

// One reproducible stream of variates. The engine is mt19937_64; every
// transform below is spelled out so that a stream's consumption order is
// fixed:
//   Uniform        (engine() >> 11) * 2^-53, in [0, 1)
//   StandardNormal Box-Muller on (1 - u1, u2); the sine branch is cached and
//                  returned by the next call
//   UniformInt(k)  floor(Uniform() * k)
//   Bernoulli(p)   Uniform() < p
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : engine_(seed) {}

  double Uniform();
  double StandardNormal();
  int UniformInt(int k);
  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace shapaudit

#endif  // SHAPAUDIT_CORE_RNG_H_

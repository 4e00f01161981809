// Copyright 2026 The Tradeoff Bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Deterministic random source used for every sampling decision in the
// benchmark (splits, folds, bootstraps, synthesis, Monte Carlo).
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The derived distributions below are implemented here instead of
// using <random> distribution classes, whose algorithms differ between
// standard libraries. Together this makes every run reproducible across
// compilers and platforms:
//
//   UniformDouble()   (x >> 11) * 2^-53 for one engine draw x.
//   UniformInt(n)     rejection sampling: threshold = (2^64 - n) mod n; draw
//                     x until x >= threshold; return x mod n.
//   Shuffle(v)        Fisher-Yates from the back: for i = n-1 .. 1,
//                     j = UniformInt(i + 1), swap(v[i], v[j]).
//   Normal()          Box-Muller on two UniformDouble() draws (cosine branch).
//   Gamma(a)          Marsaglia-Tsang; a < 1 boosted by U^(1/a).

#ifndef TRADEOFF_COMMON_RANDOM_H_
#define TRADEOFF_COMMON_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace tradeoff {

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1).
  double UniformDouble() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double Uniform(double lo, double hi) {
    return lo + (hi - lo) * UniformDouble();
  }

  // Uniform on {0, ..., n - 1}. Requires n > 0.
  uint64_t UniformInt(uint64_t n);

  bool Bernoulli(double p) { return UniformDouble() < p; }

  double Normal();

  // Gamma(shape, 1). Requires shape > 0.
  double Gamma(double shape);

  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (size_t i = values.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(UniformInt(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
uint64_t MixBits(uint64_t x);

// Child seeds for independent tasks: derived from the parent seed and a task
// label (or index) so that tasks do not share random streams.
uint64_t DeriveSeed(uint64_t seed, std::string_view label);
uint64_t DeriveSeed(uint64_t seed, uint64_t index);

}  // namespace tradeoff

#endif  // TRADEOFF_COMMON_RANDOM_H_

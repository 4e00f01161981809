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


// Bayesian sign test between a candidate and a baseline over per-dataset
// percentage differences.
//
// Each finite difference falls below, inside or above the ROPE [low, high]
// (bounds inclusive). For a higher-is-better metric "above" is a candidate
// win; for a lower-is-better one "below" is. The posterior over the
// (win, rope, loss) shares is Dirichlet(n_win + s/3, n_rope + s/3,
// n_loss + s/3) with prior strength s, and each reported probability is the
// Monte Carlo frequency with which that component is the largest.

#ifndef TRADEOFF_ANALYSIS_BAYES_SIGN_TEST_H_
#define TRADEOFF_ANALYSIS_BAYES_SIGN_TEST_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace tradeoff {

struct BayesOptions {
  double rope_low = -1.0;  // percent
  double rope_high = 1.0;
  double prior_strength = 1.0;
  int mc_samples = 30000;
  uint64_t seed = 0;
};

struct BayesComparison {
  double p_win = 0.0;
  double p_rope = 0.0;
  double p_loss = 0.0;
  double rope_low = 0.0;
  double rope_high = 0.0;
  int samples = 0;
  size_t wins = 0;
  size_t ropes = 0;
  size_t losses = 0;
  size_t excluded = 0;  // non-finite differences left out of the counts
  std::vector<double> diffs;
};

absl::StatusOr<BayesComparison> BayesSignTest(std::span<const double> diffs,
                                              bool higher_is_better,
                                              const BayesOptions& options);

}  // namespace tradeoff

#endif  // TRADEOFF_ANALYSIS_BAYES_SIGN_TEST_H_

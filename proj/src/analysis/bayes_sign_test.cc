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


#include "tradeoff/analysis/bayes_sign_test.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "tradeoff/common/random.h"

namespace tradeoff {

absl::StatusOr<BayesComparison> BayesSignTest(std::span<const double> diffs,
                                              bool higher_is_better,
                                              const BayesOptions& options) {
  if (!(options.rope_low < options.rope_high)) {
    return absl::InvalidArgumentError("ROPE needs low < high");
  }
  if (!(options.prior_strength > 0.0)) {
    return absl::InvalidArgumentError("prior strength must be > 0");
  }
  if (options.mc_samples < 1) {
    return absl::InvalidArgumentError("mc_samples must be >= 1");
  }
  BayesComparison result;
  result.rope_low = options.rope_low;
  result.rope_high = options.rope_high;
  result.samples = options.mc_samples;
  result.diffs.assign(diffs.begin(), diffs.end());
  for (double d : diffs) {
    if (!std::isfinite(d)) {
      ++result.excluded;
    } else if (d < options.rope_low) {
      ++(higher_is_better ? result.losses : result.wins);
    } else if (d > options.rope_high) {
      ++(higher_is_better ? result.wins : result.losses);
    } else {
      ++result.ropes;
    }
  }
  if (result.excluded == diffs.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Bayes sign test needs at least one finite difference (got ",
        diffs.size(), ", all non-finite)"));
  }

  const double prior = options.prior_strength / 3.0;
  const double alpha[3] = {static_cast<double>(result.wins) + prior,
                           static_cast<double>(result.ropes) + prior,
                           static_cast<double>(result.losses) + prior};
  size_t top[3] = {0, 0, 0};
  Rng rng(options.seed);
  for (int s = 0; s < options.mc_samples; ++s) {
    // Normalization does not change which component is largest.
    size_t best = 0;
    double best_value = rng.Gamma(alpha[0]);
    for (size_t c = 1; c < 3; ++c) {
      const double g = rng.Gamma(alpha[c]);
      if (g > best_value) {
        best = c;
        best_value = g;
      }
    }
    ++top[best];
  }
  const double n = static_cast<double>(options.mc_samples);
  result.p_win = static_cast<double>(top[0]) / n;
  result.p_rope = static_cast<double>(top[1]) / n;
  result.p_loss = static_cast<double>(top[2]) / n;
  return result;
}

}  // namespace tradeoff

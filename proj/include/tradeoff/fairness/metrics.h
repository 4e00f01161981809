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

#ifndef TRADEOFF_FAIRNESS_METRICS_H_
#define TRADEOFF_FAIRNESS_METRICS_H_

#include <array>
#include <cstddef>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace tradeoff {

// Per-row predicted label, true label and group (1 = privileged).
struct GroupedPredictions {
  std::vector<int> predicted;
  std::vector<int> truth;
  std::vector<int> group;

  absl::Status Validate() const;
};

// counts[group][truth][predicted].
using ConfusionCounts = std::array<std::array<std::array<size_t, 2>, 2>, 2>;

absl::StatusOr<ConfusionCounts> CountConfusion(const GroupedPredictions& p);

struct GroupRates {
  size_t rows = 0;
  size_t positives = 0;  // true label 1
  size_t negatives = 0;
  double selection_rate = 0.0;  // P[Yhat = 1 | S = g]
  double tpr = 0.0;             // P[Yhat = 1 | S = g, Y = 1]
  double fpr = 0.0;             // P[Yhat = 1 | S = g, Y = 0]
};

struct FairnessReport {
  double demographic_parity_diff = 0.0;
  double tpr_diff = 0.0;
  double fpr_diff = 0.0;
  double equalized_odds_diff = 0.0;  // max(tpr_diff, fpr_diff)
  std::array<GroupRates, 2> groups;  // indexed by group

  nlohmann::json ToJson() const;
};

// |P[Yhat=1 | S=1] - P[Yhat=1 | S=0]|. Fails with FailedPrecondition when a
// group is empty.
absl::StatusOr<double> DemographicParityDifference(const GroupedPredictions& p);

// Fails with FailedPrecondition naming the first empty (group, label) cell.
absl::StatusOr<FairnessReport> EqualizedOddsDifference(const GroupedPredictions& p);
absl::StatusOr<FairnessReport> FairnessFromCounts(const ConfusionCounts& counts);

}  // namespace tradeoff

#endif  // TRADEOFF_FAIRNESS_METRICS_H_

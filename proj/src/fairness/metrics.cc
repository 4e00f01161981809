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

#include "tradeoff/fairness/metrics.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "tradeoff/common/status_macros.h"

namespace tradeoff {
namespace {

using json = nlohmann::json;

const char* GroupName(int g) { return g == 1 ? "privileged" : "unprivileged"; }

double Ratio(size_t num, size_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

absl::Status GroupedPredictions::Validate() const {
  if (predicted.size() != truth.size() || predicted.size() != group.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "grouped predictions have mismatched lengths (", predicted.size(), ", ",
        truth.size(), ", ", group.size(), ")"));
  }
  for (size_t i = 0; i < predicted.size(); ++i) {
    if ((predicted[i] | truth[i] | group[i]) & ~1) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", i, " holds a non-binary value"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<ConfusionCounts> CountConfusion(const GroupedPredictions& p) {
  TRADEOFF_RETURN_IF_ERROR(p.Validate());
  ConfusionCounts counts{};
  for (size_t i = 0; i < p.predicted.size(); ++i) {
    ++counts[p.group[i]][p.truth[i]][p.predicted[i]];
  }
  return counts;
}

absl::StatusOr<double> DemographicParityDifference(const GroupedPredictions& p) {
  TRADEOFF_ASSIGN_OR_RETURN(ConfusionCounts c, CountConfusion(p));
  double rate[2];
  for (int g = 0; g < 2; ++g) {
    const size_t rows = c[g][0][0] + c[g][0][1] + c[g][1][0] + c[g][1][1];
    if (rows == 0) {
      return absl::FailedPreconditionError(absl::StrCat(
          "demographic parity undefined: ", GroupName(g), " group is empty"));
    }
    rate[g] = Ratio(c[g][0][1] + c[g][1][1], rows);
  }
  return std::abs(rate[1] - rate[0]);
}

absl::StatusOr<FairnessReport> FairnessFromCounts(const ConfusionCounts& c) {
  FairnessReport report;
  for (int g = 0; g < 2; ++g) {
    for (int y = 0; y < 2; ++y) {
      if (c[g][y][0] + c[g][y][1] == 0) {
        return absl::FailedPreconditionError(absl::StrCat(
            "equalized odds undefined: no rows with group=", g, " (",
            GroupName(g), "), label=", y));
      }
    }
    GroupRates& r = report.groups[g];
    r.negatives = c[g][0][0] + c[g][0][1];
    r.positives = c[g][1][0] + c[g][1][1];
    r.rows = r.negatives + r.positives;
    r.selection_rate = Ratio(c[g][0][1] + c[g][1][1], r.rows);
    r.tpr = Ratio(c[g][1][1], r.positives);
    r.fpr = Ratio(c[g][0][1], r.negatives);
  }
  report.demographic_parity_diff =
      std::abs(report.groups[1].selection_rate - report.groups[0].selection_rate);
  report.tpr_diff = std::abs(report.groups[1].tpr - report.groups[0].tpr);
  report.fpr_diff = std::abs(report.groups[1].fpr - report.groups[0].fpr);
  report.equalized_odds_diff = std::max(report.tpr_diff, report.fpr_diff);
  return report;
}

absl::StatusOr<FairnessReport> EqualizedOddsDifference(const GroupedPredictions& p) {
  TRADEOFF_ASSIGN_OR_RETURN(ConfusionCounts c, CountConfusion(p));
  return FairnessFromCounts(c);
}

json FairnessReport::ToJson() const {
  json groups_json = json::object();
  for (int g = 0; g < 2; ++g) {
    const GroupRates& r = groups[g];
    groups_json[GroupName(g)] = {{"rows", r.rows},
                                 {"positives", r.positives},
                                 {"negatives", r.negatives},
                                 {"selection_rate", r.selection_rate},
                                 {"tpr", r.tpr},
                                 {"fpr", r.fpr}};
  }
  return {{"demographic_parity_diff", demographic_parity_diff},
          {"tpr_diff", tpr_diff},
          {"fpr_diff", fpr_diff},
          {"equalized_odds_diff", equalized_odds_diff},
          {"groups", groups_json}};
}

}  // namespace tradeoff

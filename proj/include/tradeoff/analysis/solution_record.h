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


// One evaluated solution (variant + trained model) and the delimited results
// table that collects them.

#ifndef TRADEOFF_ANALYSIS_SOLUTION_RECORD_H_
#define TRADEOFF_ANALYSIS_SOLUTION_RECORD_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace tradeoff {

inline constexpr char kNoFairnessMethod[] = "none";

struct SolutionRecord {
  std::string dataset;
  std::string variant_id;
  std::string method;  // synthesizer family, e.g. PrivateSMOTE or CTGAN
  std::string params;  // variant parameters, e.g. ratio=1;knn=3;eps=0.5
  std::string algorithm;  // Agnostic-Logit, EG-RF, ...
  std::string fairness_method;  // kNoFairnessMethod or EG
  double accuracy = 0.0;
  // Unset when the fairness metric was undefined on the test split.
  std::optional<double> eq_odds_diff;
  double linkage_risk = 0.0;

  // Solution family: the synthesizer, joined with the fairness method when
  // there is one ("PrivateSMOTE+EG").
  std::string Family() const;

  absl::Status Validate() const;

  friend bool operator==(const SolutionRecord&, const SolutionRecord&) = default;
};

// Canonical row order: dataset, variant_id, algorithm, fairness_method.
void SortRecords(std::vector<SolutionRecord>& records);

// Header plus one row per record, numbers in shortest round-trip form and
// an empty field for a missing eq_odds_diff.
std::string FormatResultsTable(std::span<const SolutionRecord> records);
absl::StatusOr<std::vector<SolutionRecord>> ParseResultsTable(
    std::string_view text);
absl::StatusOr<std::vector<SolutionRecord>> ReadResultsTable(
    const std::string& path);

}  // namespace tradeoff

#endif  // TRADEOFF_ANALYSIS_SOLUTION_RECORD_H_

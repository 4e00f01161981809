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


// Comparisons between solutions along the three vectors: performance
// (accuracy, higher is better), fairness (equalized-odds difference, lower
// is better) and privacy (linkage risk, lower is better).
//
// Records without an equalized-odds value take no part in any comparison
// that needs one; such exclusions are counted in the reports.

#ifndef TRADEOFF_ANALYSIS_ANALYSIS_H_
#define TRADEOFF_ANALYSIS_ANALYSIS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "tradeoff/analysis/bayes_sign_test.h"
#include "tradeoff/analysis/solution_record.h"

namespace tradeoff {

enum class Vector { kPerformance, kFairness, kPrivacy };

inline constexpr Vector kAllVectors[] = {Vector::kPerformance, Vector::kFairness,
                                         Vector::kPrivacy};

std::string_view VectorName(Vector v);       // performance, fairness, privacy
std::string_view VectorShortName(Vector v);  // acc, fair, priv
absl::StatusOr<Vector> ParseVector(std::string_view name);  // either form

bool HigherIsBetter(Vector v);
std::optional<double> MetricValue(const SolutionRecord& record, Vector v);

// (r_a - r_b) / |r_b| * 100. With r_b = 0 the result is 0 when r_a = 0 and
// otherwise an infinity carrying the sign of r_a; callers treat infinities
// as flagged and leave them out of Bayes counts.
double PercentageDifference(double r_a, double r_b);

enum class Outcome { kWin, kDraw, kLoss };

std::string_view OutcomeName(Outcome o);

// Candidate against baseline. A draw when |percentage difference| <= rope_pp
// (with rope_pp = 0 only exact equality draws), otherwise a win when the
// candidate is better in the given orientation.
Outcome Compare(double candidate, double baseline, bool higher_is_better,
                double rope_pp);

// Per dataset, the index of the record optimal on `v`. Ties go to the
// lexicographically first (variant_id, algorithm, fairness_method), then to
// the earlier record. Datasets without any record carrying the metric are
// absent.
std::map<std::string, size_t> SelectBaselines(
    std::span<const SolutionRecord> records, Vector v);

struct FamilyOutcome {
  std::string family;
  size_t count = 0;  // compared records
  double win = 0.0;
  double draw = 0.0;
  double loss = 0.0;
  double companion_win = 0.0;  // win share on the third vector
};

struct PathReport {
  Vector optimized = Vector::kPerformance;
  Vector prioritized = Vector::kFairness;
  Vector companion = Vector::kPrivacy;
  double rope_pp = 0.0;
  std::vector<FamilyOutcome> families;  // sorted by family name
  size_t excluded = 0;  // records lacking a metric the path needs
};

// Baselines are the per-dataset optima on `optimized`; every other record
// of the dataset is compared with its baseline on `prioritized` and on the
// remaining vector, and the outcomes are pooled per solution family across
// datasets.
absl::StatusOr<PathReport> OptimizationPath(
    std::span<const SolutionRecord> records, Vector optimized,
    Vector prioritized, double rope_pp = 0.0);

struct RankedSolution {
  size_t index = 0;
  double mean_rank = 0.0;
};

// Per dataset, the record with the lowest mean rank over the three vectors
// (rank 1 = best, tied values share their mean rank). Ties as in
// SelectBaselines. Records without an equalized-odds value are not ranked.
std::map<std::string, RankedSolution> AverageRankSolutions(
    std::span<const SolutionRecord> records);

struct ThreeWayEntry {
  std::string family;
  Vector vector = Vector::kPerformance;
  size_t datasets = 0;
  std::optional<BayesComparison> comparison;  // unset: no finite difference
  std::vector<std::string> flags;
};

// Within each family: per dataset, the family's average-rank solution is
// the candidate and the family's optimum on each vector the baseline; the
// per-dataset percentage differences feed one Bayes sign test per
// (family, vector). The Monte Carlo seed is derived from options.seed and
// the pair's name.
absl::StatusOr<std::vector<ThreeWayEntry>> ThreeWayComparison(
    std::span<const SolutionRecord> records, const BayesOptions& options);

}  // namespace tradeoff

#endif  // TRADEOFF_ANALYSIS_ANALYSIS_H_

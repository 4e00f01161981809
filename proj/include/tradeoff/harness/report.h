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


// Plot-ready analysis tables for a results table.
//
//   paths_<v1>_<v2>.csv   optimization path for each ordered vector pair
//   bayes.csv             three-way comparison per (family, vector)
//   average_rank.csv      average-rank solution per dataset
//   baselines.csv         per-dataset optimum on each vector
//   manifest.json         config digest, seed, results digest, file digests

#ifndef TRADEOFF_HARNESS_REPORT_H_
#define TRADEOFF_HARNESS_REPORT_H_

#include <cstdint>
#include <span>
#include <string>

#include "absl/status/status.h"
#include "tradeoff/analysis/analysis.h"
#include "tradeoff/analysis/solution_record.h"

namespace tradeoff {

struct ReportOptions {
  std::string config_digest;
  uint64_t seed = 0;
  std::string results_digest;
  BayesOptions bayes;
  double path_rope = 0.0;
};

std::string FormatPathReport(const PathReport& report);
std::string FormatThreeWay(std::span<const ThreeWayEntry> entries);
std::string FormatBayesComparison(const BayesComparison& c);
std::string FormatAverageRanks(std::span<const SolutionRecord> records);
std::string FormatBaselines(std::span<const SolutionRecord> records);

absl::Status WriteReport(std::span<const SolutionRecord> records,
                         const ReportOptions& options, const std::string& dir);

}  // namespace tradeoff

#endif  // TRADEOFF_HARNESS_REPORT_H_

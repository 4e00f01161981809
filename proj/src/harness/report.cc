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


#include "tradeoff/harness/report.h"

#include <filesystem>
#include <string_view>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "json.hpp"
#include "tradeoff/common/csv.h"
#include "tradeoff/common/digest.h"
#include "tradeoff/common/status_macros.h"

namespace tradeoff {
namespace {

std::string OptionalNumber(const std::optional<double>& v) {
  return v ? FormatNumber(*v) : std::string();
}

void AppendRecordFields(const SolutionRecord& r, std::vector<std::string>& row) {
  row.insert(row.end(), {r.variant_id, r.algorithm, r.fairness_method,
                         FormatNumber(r.accuracy), OptionalNumber(r.eq_odds_diff),
                         FormatNumber(r.linkage_risk)});
}

}  // namespace

std::string FormatPathReport(const PathReport& report) {
  CsvTable table;
  table.header = {"optimized", "prioritized", "companion", "family", "count",
                  "win",       "draw",        "loss",      "companion_win"};
  for (const FamilyOutcome& f : report.families) {
    table.rows.push_back({std::string(VectorName(report.optimized)),
                          std::string(VectorName(report.prioritized)),
                          std::string(VectorName(report.companion)), f.family,
                          absl::StrCat(f.count), FormatNumber(f.win),
                          FormatNumber(f.draw), FormatNumber(f.loss),
                          FormatNumber(f.companion_win)});
  }
  return FormatCsv(table);
}

std::string FormatBayesComparison(const BayesComparison& c) {
  CsvTable table;
  table.header = {"n",     "wins",   "ropes",  "losses", "excluded",
                  "p_win", "p_rope", "p_loss", "rope_low", "rope_high",
                  "samples"};
  table.rows.push_back(
      {absl::StrCat(c.diffs.size()), absl::StrCat(c.wins), absl::StrCat(c.ropes),
       absl::StrCat(c.losses), absl::StrCat(c.excluded), FormatNumber(c.p_win),
       FormatNumber(c.p_rope), FormatNumber(c.p_loss), FormatNumber(c.rope_low),
       FormatNumber(c.rope_high), absl::StrCat(c.samples)});
  return FormatCsv(table);
}

std::string FormatThreeWay(std::span<const ThreeWayEntry> entries) {
  CsvTable table;
  table.header = {"family", "vector", "datasets", "wins",   "ropes", "losses",
                  "excluded", "p_win", "p_rope",  "p_loss", "flags"};
  for (const ThreeWayEntry& e : entries) {
    std::vector<std::string> row = {e.family, std::string(VectorName(e.vector)),
                                    absl::StrCat(e.datasets)};
    if (e.comparison) {
      const BayesComparison& c = *e.comparison;
      row.insert(row.end(),
                 {absl::StrCat(c.wins), absl::StrCat(c.ropes),
                  absl::StrCat(c.losses), absl::StrCat(c.excluded),
                  FormatNumber(c.p_win), FormatNumber(c.p_rope),
                  FormatNumber(c.p_loss)});
    } else {
      row.insert(row.end(), 7, std::string());
    }
    row.push_back(absl::StrJoin(e.flags, ";"));
    table.rows.push_back(std::move(row));
  }
  return FormatCsv(table);
}

std::string FormatAverageRanks(std::span<const SolutionRecord> records) {
  CsvTable table;
  table.header = {"dataset",  "mean_rank",    "variant_id",  "algorithm",
                  "fairness_method", "accuracy", "eq_odds_diff", "linkage_risk"};
  for (const auto& [dataset, solution] : AverageRankSolutions(records)) {
    std::vector<std::string> row = {dataset, FormatNumber(solution.mean_rank)};
    AppendRecordFields(records[solution.index], row);
    table.rows.push_back(std::move(row));
  }
  return FormatCsv(table);
}

std::string FormatBaselines(std::span<const SolutionRecord> records) {
  CsvTable table;
  table.header = {"dataset",  "vector",       "variant_id",  "algorithm",
                  "fairness_method", "accuracy", "eq_odds_diff", "linkage_risk"};
  for (Vector v : kAllVectors) {
    for (const auto& [dataset, index] : SelectBaselines(records, v)) {
      std::vector<std::string> row = {dataset, std::string(VectorName(v))};
      AppendRecordFields(records[index], row);
      table.rows.push_back(std::move(row));
    }
  }
  return FormatCsv(table);
}

absl::Status WriteReport(std::span<const SolutionRecord> records,
                         const ReportOptions& options, const std::string& dir) {
  if (records.empty()) {
    return absl::FailedPreconditionError("cannot report on an empty results table");
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create report directory ", dir, ": ", ec.message()));
  }

  std::vector<std::pair<std::string, std::string>> files;
  for (Vector v1 : kAllVectors) {
    for (Vector v2 : kAllVectors) {
      if (v1 == v2) continue;
      TRADEOFF_ASSIGN_OR_RETURN(PathReport path,
                                OptimizationPath(records, v1, v2, options.path_rope));
      files.emplace_back(absl::StrCat("paths_", std::string(VectorShortName(v1)),
                                      "_", std::string(VectorShortName(v2)),
                                      ".csv"),
                         FormatPathReport(path));
    }
  }
  BayesOptions bayes = options.bayes;
  bayes.seed = options.seed;
  TRADEOFF_ASSIGN_OR_RETURN(std::vector<ThreeWayEntry> three_way,
                            ThreeWayComparison(records, bayes));
  files.emplace_back("bayes.csv", FormatThreeWay(three_way));
  files.emplace_back("average_rank.csv", FormatAverageRanks(records));
  files.emplace_back("baselines.csv", FormatBaselines(records));

  size_t without_fairness = 0;
  for (const SolutionRecord& r : records) {
    if (!r.eq_odds_diff) ++without_fairness;
  }
  nlohmann::json manifest = {
      {"config_digest", options.config_digest},
      {"seed", options.seed},
      {"results_digest", options.results_digest},
      {"records", records.size()},
      {"records_without_fairness", without_fairness},
      {"path_rope", options.path_rope},
      {"bayes",
       {{"rope", {options.bayes.rope_low, options.bayes.rope_high}},
        {"prior_strength", options.bayes.prior_strength},
        {"mc_samples", options.bayes.mc_samples}}},
      {"files", nlohmann::json::object()}};
  for (const auto& [name, contents] : files) {
    TRADEOFF_RETURN_IF_ERROR(
        WriteTextFile((std::filesystem::path(dir) / name).string(), contents));
    manifest["files"][name] = HexDigest(Fnv1a64(contents));
  }
  return WriteTextFile((std::filesystem::path(dir) / "manifest.json").string(),
                       manifest.dump(2) + "\n");
}

}  // namespace tradeoff

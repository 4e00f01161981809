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


#include "tradeoff/analysis/solution_record.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "tradeoff/common/csv.h"

namespace tradeoff {
namespace {

constexpr std::array<const char*, 9> kColumns = {
    "dataset",   "variant_id",      "method",
    "params",    "algorithm",       "fairness_method",
    "accuracy",  "eq_odds_diff",    "linkage_risk"};

absl::Status CheckUnit(std::string_view name, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat(std::string(name), " = ", value, " is outside [0, 1]"));
  }
  return absl::OkStatus();
}

}  // namespace

std::string SolutionRecord::Family() const {
  if (fairness_method.empty() || fairness_method == kNoFairnessMethod) {
    return method;
  }
  return absl::StrCat(method, "+", fairness_method);
}

absl::Status SolutionRecord::Validate() const {
  if (dataset.empty() || variant_id.empty() || algorithm.empty()) {
    return absl::InvalidArgumentError(
        "solution record needs dataset, variant_id and algorithm");
  }
  if (absl::Status s = CheckUnit("accuracy", accuracy); !s.ok()) return s;
  if (eq_odds_diff.has_value()) {
    if (absl::Status s = CheckUnit("eq_odds_diff", *eq_odds_diff); !s.ok()) {
      return s;
    }
  }
  return CheckUnit("linkage_risk", linkage_risk);
}

void SortRecords(std::vector<SolutionRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const SolutionRecord& a, const SolutionRecord& b) {
                     return std::tie(a.dataset, a.variant_id, a.algorithm,
                                     a.fairness_method) <
                            std::tie(b.dataset, b.variant_id, b.algorithm,
                                     b.fairness_method);
                   });
}

std::string FormatResultsTable(std::span<const SolutionRecord> records) {
  CsvTable table;
  table.header.assign(kColumns.begin(), kColumns.end());
  for (const SolutionRecord& r : records) {
    table.rows.push_back(
        {r.dataset, r.variant_id, r.method, r.params, r.algorithm,
         r.fairness_method, FormatNumber(r.accuracy),
         r.eq_odds_diff ? FormatNumber(*r.eq_odds_diff) : std::string(),
         FormatNumber(r.linkage_risk)});
  }
  return FormatCsv(table);
}

absl::StatusOr<std::vector<SolutionRecord>> ParseResultsTable(
    std::string_view text) {
  absl::StatusOr<CsvTable> table = ParseCsv(text);
  if (!table.ok()) return table.status();
  std::vector<size_t> at(kColumns.size());
  for (size_t c = 0; c < kColumns.size(); ++c) {
    auto it = std::find(table->header.begin(), table->header.end(), kColumns[c]);
    if (it == table->header.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("results table lacks column '", kColumns[c], "'"));
    }
    at[c] = static_cast<size_t>(it - table->header.begin());
  }
  std::vector<SolutionRecord> records;
  for (size_t i = 0; i < table->rows.size(); ++i) {
    const std::vector<std::string>& row = table->rows[i];
    auto number = [&](size_t c) -> absl::StatusOr<double> {
      std::optional<double> v = ParseNumber(row[at[c]]);
      if (!v) {
        return absl::InvalidArgumentError(
            absl::StrCat("results row ", i + 1, ": ", kColumns[c], " '",
                         row[at[c]], "' is not a number"));
      }
      return *v;
    };
    SolutionRecord r;
    r.dataset = row[at[0]];
    r.variant_id = row[at[1]];
    r.method = row[at[2]];
    r.params = row[at[3]];
    r.algorithm = row[at[4]];
    r.fairness_method = row[at[5]];
    absl::StatusOr<double> accuracy = number(6);
    if (!accuracy.ok()) return accuracy.status();
    r.accuracy = *accuracy;
    if (!row[at[7]].empty()) {
      absl::StatusOr<double> eo = number(7);
      if (!eo.ok()) return eo.status();
      r.eq_odds_diff = *eo;
    }
    absl::StatusOr<double> risk = number(8);
    if (!risk.ok()) return risk.status();
    r.linkage_risk = *risk;
    if (absl::Status s = r.Validate(); !s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("results row ", i + 1, ": ", s.message()));
    }
    records.push_back(std::move(r));
  }
  return records;
}

absl::StatusOr<std::vector<SolutionRecord>> ReadResultsTable(
    const std::string& path) {
  absl::StatusOr<std::string> text = ReadTextFile(path);
  if (!text.ok()) return text.status();
  return ParseResultsTable(*text);
}

}  // namespace tradeoff

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


#include "tradeoff/analysis/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "tradeoff/common/random.h"

namespace tradeoff {
namespace {

constexpr double kRankTolerance = 1e-12;

bool Complete(const SolutionRecord& r) { return r.eq_odds_diff.has_value(); }

// True when record a should be preferred to record b among equals.
bool TieBreakBefore(std::span<const SolutionRecord> records, size_t a, size_t b) {
  const SolutionRecord& x = records[a];
  const SolutionRecord& y = records[b];
  return std::tie(x.variant_id, x.algorithm, x.fairness_method, a) <
         std::tie(y.variant_id, y.algorithm, y.fairness_method, b);
}

// Indices of each dataset's records, in record order.
std::map<std::string, std::vector<size_t>> ByDataset(
    std::span<const SolutionRecord> records, std::span<const size_t> subset) {
  std::map<std::string, std::vector<size_t>> out;
  for (size_t i : subset) out[records[i].dataset].push_back(i);
  return out;
}

std::vector<size_t> AllIndices(size_t n) {
  std::vector<size_t> v(n);
  std::iota(v.begin(), v.end(), size_t{0});
  return v;
}

std::map<std::string, size_t> SelectBaselinesAmong(
    std::span<const SolutionRecord> records, std::span<const size_t> subset,
    Vector v) {
  std::map<std::string, size_t> out;
  const bool higher = HigherIsBetter(v);
  for (size_t i : subset) {
    const std::optional<double> value = MetricValue(records[i], v);
    if (!value) continue;
    auto [it, inserted] = out.emplace(records[i].dataset, i);
    if (inserted) continue;
    const double incumbent = *MetricValue(records[it->second], v);
    const bool better = higher ? *value > incumbent : *value < incumbent;
    if (better || (*value == incumbent && TieBreakBefore(records, i, it->second))) {
      it->second = i;
    }
  }
  return out;
}

// Fractional ranks (1 = best) of `rows` on vector v.
std::vector<double> FractionalRanks(std::span<const SolutionRecord> records,
                                    std::span<const size_t> rows, Vector v) {
  const bool higher = HigherIsBetter(v);
  std::vector<size_t> order(rows.size());
  std::iota(order.begin(), order.end(), size_t{0});
  auto value = [&](size_t k) { return *MetricValue(records[rows[k]], v); };
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return higher ? value(a) > value(b) : value(a) < value(b);
  });
  std::vector<double> ranks(rows.size());
  for (size_t start = 0; start < order.size();) {
    size_t end = start + 1;
    while (end < order.size() && value(order[end]) == value(order[start])) ++end;
    const double mean = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
    for (size_t k = start; k < end; ++k) ranks[order[k]] = mean;
    start = end;
  }
  return ranks;
}

std::map<std::string, RankedSolution> AverageRankAmong(
    std::span<const SolutionRecord> records, std::span<const size_t> subset) {
  std::map<std::string, RankedSolution> out;
  for (const auto& [dataset, rows] : ByDataset(records, subset)) {
    std::vector<double> mean(rows.size(), 0.0);
    for (Vector v : kAllVectors) {
      const std::vector<double> ranks = FractionalRanks(records, rows, v);
      for (size_t k = 0; k < rows.size(); ++k) mean[k] += ranks[k] / 3.0;
    }
    size_t best = 0;
    for (size_t k = 1; k < rows.size(); ++k) {
      if (mean[k] < mean[best] - kRankTolerance ||
          (std::abs(mean[k] - mean[best]) <= kRankTolerance &&
           TieBreakBefore(records, rows[k], rows[best]))) {
        best = k;
      }
    }
    out[dataset] = RankedSolution{rows[best], mean[best]};
  }
  return out;
}

std::vector<size_t> CompleteIndices(std::span<const SolutionRecord> records) {
  std::vector<size_t> out;
  for (size_t i = 0; i < records.size(); ++i) {
    if (Complete(records[i])) out.push_back(i);
  }
  return out;
}

}  // namespace

std::string_view VectorName(Vector v) {
  switch (v) {
    case Vector::kPerformance:
      return "performance";
    case Vector::kFairness:
      return "fairness";
    case Vector::kPrivacy:
      return "privacy";
  }
  return "";
}

std::string_view VectorShortName(Vector v) {
  switch (v) {
    case Vector::kPerformance:
      return "acc";
    case Vector::kFairness:
      return "fair";
    case Vector::kPrivacy:
      return "priv";
  }
  return "";
}

absl::StatusOr<Vector> ParseVector(std::string_view name) {
  for (Vector v : kAllVectors) {
    if (name == VectorName(v) || name == VectorShortName(v)) return v;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown vector '", std::string(name), "' (expected acc, fair or priv)"));
}

bool HigherIsBetter(Vector v) { return v == Vector::kPerformance; }

std::optional<double> MetricValue(const SolutionRecord& record, Vector v) {
  switch (v) {
    case Vector::kPerformance:
      return record.accuracy;
    case Vector::kFairness:
      return record.eq_odds_diff;
    case Vector::kPrivacy:
      return record.linkage_risk;
  }
  return std::nullopt;
}

double PercentageDifference(double r_a, double r_b) {
  if (r_b == 0.0) {
    if (r_a == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), r_a);
  }
  return (r_a - r_b) / std::abs(r_b) * 100.0;
}

std::string_view OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kWin:
      return "win";
    case Outcome::kDraw:
      return "draw";
    case Outcome::kLoss:
      return "loss";
  }
  return "";
}

Outcome Compare(double candidate, double baseline, bool higher_is_better,
                double rope_pp) {
  if (candidate == baseline) return Outcome::kDraw;
  if (std::abs(PercentageDifference(candidate, baseline)) <= rope_pp) {
    return Outcome::kDraw;
  }
  const bool better =
      higher_is_better ? candidate > baseline : candidate < baseline;
  return better ? Outcome::kWin : Outcome::kLoss;
}

std::map<std::string, size_t> SelectBaselines(
    std::span<const SolutionRecord> records, Vector v) {
  return SelectBaselinesAmong(records, AllIndices(records.size()), v);
}

absl::StatusOr<PathReport> OptimizationPath(
    std::span<const SolutionRecord> records, Vector optimized,
    Vector prioritized, double rope_pp) {
  if (optimized == prioritized) {
    return absl::InvalidArgumentError(
        "the prioritized vector must differ from the optimized one");
  }
  if (!(rope_pp >= 0.0)) {
    return absl::InvalidArgumentError("path ROPE must be >= 0 percent");
  }
  PathReport report;
  report.optimized = optimized;
  report.prioritized = prioritized;
  for (Vector v : kAllVectors) {
    if (v != optimized && v != prioritized) report.companion = v;
  }
  report.rope_pp = rope_pp;

  const std::vector<size_t> complete = CompleteIndices(records);
  report.excluded = records.size() - complete.size();
  const std::map<std::string, size_t> baselines =
      SelectBaselinesAmong(records, complete, optimized);

  struct Tally {
    size_t count = 0, win = 0, draw = 0, loss = 0, companion_win = 0;
  };
  std::map<std::string, Tally> tallies;
  for (size_t i : complete) {
    const size_t base = baselines.at(records[i].dataset);
    if (i == base) continue;
    const SolutionRecord& r = records[i];
    const SolutionRecord& b = records[base];
    Tally& t = tallies[r.Family()];
    ++t.count;
    switch (Compare(*MetricValue(r, prioritized), *MetricValue(b, prioritized),
                    HigherIsBetter(prioritized), rope_pp)) {
      case Outcome::kWin:
        ++t.win;
        break;
      case Outcome::kDraw:
        ++t.draw;
        break;
      case Outcome::kLoss:
        ++t.loss;
        break;
    }
    if (Compare(*MetricValue(r, report.companion),
                *MetricValue(b, report.companion),
                HigherIsBetter(report.companion), rope_pp) == Outcome::kWin) {
      ++t.companion_win;
    }
  }
  for (const auto& [family, t] : tallies) {
    const double n = static_cast<double>(t.count);
    report.families.push_back(
        FamilyOutcome{family, t.count, static_cast<double>(t.win) / n,
                      static_cast<double>(t.draw) / n,
                      static_cast<double>(t.loss) / n,
                      static_cast<double>(t.companion_win) / n});
  }
  return report;
}

std::map<std::string, RankedSolution> AverageRankSolutions(
    std::span<const SolutionRecord> records) {
  return AverageRankAmong(records, CompleteIndices(records));
}

absl::StatusOr<std::vector<ThreeWayEntry>> ThreeWayComparison(
    std::span<const SolutionRecord> records, const BayesOptions& options) {
  std::map<std::string, std::vector<size_t>> families;
  for (size_t i : CompleteIndices(records)) {
    families[records[i].Family()].push_back(i);
  }
  std::vector<ThreeWayEntry> out;
  for (const auto& [family, members] : families) {
    const std::map<std::string, RankedSolution> ranked =
        AverageRankAmong(records, members);
    for (Vector v : kAllVectors) {
      const std::map<std::string, size_t> baselines =
          SelectBaselinesAmong(records, members, v);
      ThreeWayEntry entry;
      entry.family = family;
      entry.vector = v;
      std::vector<double> diffs;
      for (const auto& [dataset, solution] : ranked) {
        diffs.push_back(PercentageDifference(
            *MetricValue(records[solution.index], v),
            *MetricValue(records[baselines.at(dataset)], v)));
      }
      entry.datasets = diffs.size();
      const bool any_finite =
          std::any_of(diffs.begin(), diffs.end(),
                      [](double d) { return std::isfinite(d); });
      if (!any_finite) {
        entry.flags.push_back("no_finite_diffs");
      } else {
        BayesOptions local = options;
        local.seed = DeriveSeed(
            options.seed, absl::StrCat(family, "/", std::string(VectorName(v))));
        absl::StatusOr<BayesComparison> c =
            BayesSignTest(diffs, HigherIsBetter(v), local);
        if (!c.ok()) return c.status();
        if (c->excluded > 0) entry.flags.push_back("infinite_diffs_excluded");
        entry.comparison = *std::move(c);
      }
      out.push_back(std::move(entry));
    }
  }
  return out;
}

}  // namespace tradeoff

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


#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "gtest/gtest.h"
#include "criteria.h"
#include "oracles.h"
#include "tradeoff/analysis/analysis.h"
#include "tradeoff/analysis/bayes_sign_test.h"
#include "tradeoff/analysis/solution_record.h"

namespace tradeoff {
namespace {

SolutionRecord Rec(std::string dataset, std::string variant, double acc,
                   double eo, double risk, std::string method = "PrivateSMOTE",
                   std::string fairness = kNoFairnessMethod) {
  SolutionRecord r;
  r.dataset = std::move(dataset);
  r.variant_id = std::move(variant);
  r.method = std::move(method);
  r.params = "ratio=1;knn=1;eps=0.1";
  r.algorithm = fairness == kNoFairnessMethod ? "Agnostic-Logit" : "EG-Logit";
  r.fairness_method = std::move(fairness);
  r.accuracy = acc;
  r.eq_odds_diff = eo;
  r.linkage_risk = risk;
  return r;
}

std::vector<SolutionRecord> RandomRecords(Rng& rng, size_t n, size_t datasets) {
  const char* methods[] = {"PrivateSMOTE", "CTGAN", "TVAE"};
  std::vector<SolutionRecord> out;
  for (size_t i = 0; i < n; ++i) {
    // Coarse values so that ties occur.
    out.push_back(Rec("d" + std::to_string(rng.UniformInt(datasets)),
                      "v" + std::to_string(i),
                      0.5 + 0.05 * static_cast<double>(rng.UniformInt(8)),
                      0.05 * static_cast<double>(rng.UniformInt(8)),
                      0.1 * static_cast<double>(rng.UniformInt(11)),
                      methods[rng.UniformInt(3)],
                      rng.Bernoulli(0.5) ? kNoFairnessMethod : "EG"));
  }
  return out;
}

TEST(PercentageDifferenceTest, Examples) {
  EXPECT_EQ(PercentageDifference(0.7, 0.7), 0.0);
  EXPECT_NEAR(PercentageDifference(0.9, 0.8), 12.5, 1e-12);
  EXPECT_NEAR(PercentageDifference(0.4, 0.8), -50.0, 1e-12);
  EXPECT_EQ(PercentageDifference(0.0, 0.0), 0.0);
  EXPECT_EQ(PercentageDifference(0.2, 0.0), std::numeric_limits<double>::infinity());
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double r = rng.Uniform(-5, 5);
    if (r != 0.0) EXPECT_EQ(PercentageDifference(r, r), 0.0);
  }
}

TEST(CompareTest, OrientationFlipIsConsistent) {
  Rng rng(2);
  for (int i = 0; i < 2000; ++i) {
    const double a = rng.Uniform(0.01, 1), b = rng.Uniform(0.01, 1);
    const double rope = rng.Bernoulli(0.5) ? 0.0 : rng.Uniform(0, 20);
    EXPECT_EQ(Compare(a, b, true, rope), Compare(-a, -b, false, rope));
    const Outcome o = Compare(a, b, false, rope);
    const Outcome flipped = Compare(b, a, false, rope);
    if (o == Outcome::kWin) EXPECT_NE(flipped, Outcome::kWin);
  }
  EXPECT_EQ(Compare(0.5, 0.5, true, 0.0), Outcome::kDraw);
  EXPECT_EQ(Compare(0.51, 0.5, true, 0.0), Outcome::kWin);
  EXPECT_EQ(Compare(0.51, 0.5, true, 5.0), Outcome::kDraw);
  EXPECT_EQ(Compare(0.1, 0.2, false, 0.0), Outcome::kWin);
}

TEST(BaselineTest, ArgmaxAndTieBreak) {
  std::vector<SolutionRecord> one = {Rec("d", "a", 0.7, 0.1, 0.5)};
  for (Vector v : kAllVectors) EXPECT_EQ(SelectBaselines(one, v).at("d"), 0u);
  std::vector<SolutionRecord> three = {Rec("d", "a", 0.7, 0.2, 0.5),
                                       Rec("d", "b", 0.9, 0.2, 0.4),
                                       Rec("d", "c", 0.8, 0.3, 0.6)};
  EXPECT_EQ(SelectBaselines(three, Vector::kPerformance).at("d"), 1u);
  std::vector<SolutionRecord> tie = {Rec("d", "zeta", 0.7, 0.1, 0.5),
                                     Rec("d", "alpha", 0.8, 0.1, 0.5)};
  EXPECT_EQ(SelectBaselines(tie, Vector::kFairness).at("d"), 1u);
  EXPECT_EQ(SelectBaselines(three, Vector::kPrivacy).at("d"), 1u);
}

TEST(PathTest, IdenticalRecordsDrawEverywhere) {
  std::vector<SolutionRecord> records;
  for (int i = 0; i < 5; ++i) records.push_back(Rec("d", "v" + std::to_string(i), 0.8, 0.1, 0.3));
  absl::StatusOr<PathReport> r =
      OptimizationPath(records, Vector::kPerformance, Vector::kFairness);
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r->families.size(), 1u);
  EXPECT_EQ(r->families[0].count, 4u);
  EXPECT_EQ(r->families[0].draw, 1.0);
  EXPECT_EQ(r->families[0].companion_win, 0.0);
}

TEST(PathTest, ThreeOfFourBetterIsThreeQuarters) {
  std::vector<SolutionRecord> records = {
      Rec("d", "base", 0.95, 0.30, 0.5, "Original"),
      Rec("d", "a", 0.80, 0.10, 0.5), Rec("d", "b", 0.80, 0.20, 0.5),
      Rec("d", "c", 0.80, 0.25, 0.5), Rec("d", "e", 0.80, 0.40, 0.5)};
  absl::StatusOr<PathReport> r =
      OptimizationPath(records, Vector::kPerformance, Vector::kFairness);
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r->families.size(), 1u);
  EXPECT_EQ(r->families[0].family, "PrivateSMOTE");
  EXPECT_EQ(r->families[0].win, 0.75);
  EXPECT_EQ(r->families[0].loss, 0.25);
}

TEST(PathTest, RejectsSameVectorAndNegativeRope) {
  std::vector<SolutionRecord> records = {Rec("d", "a", 0.8, 0.1, 0.3)};
  EXPECT_FALSE(OptimizationPath(records, Vector::kFairness, Vector::kFairness).ok());
  EXPECT_FALSE(
      OptimizationPath(records, Vector::kPerformance, Vector::kFairness, -1).ok());
}

// Independent recount: baseline by brute argmax with the documented
// tie-break, outcomes by direct comparison of raw values.
TEST(PathTest, MatchesBruteForceRecount) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<SolutionRecord> records = RandomRecords(rng, 20, 3);
    const Vector v1 = kAllVectors[rng.UniformInt(3)];
    Vector v2 = kAllVectors[rng.UniformInt(3)];
    if (v2 == v1) v2 = kAllVectors[(static_cast<int>(v1) + 1) % 3];
    Vector v3 = Vector::kPerformance;
    for (Vector v : kAllVectors) {
      if (v != v1 && v != v2) v3 = v;
    }
    absl::StatusOr<PathReport> report = OptimizationPath(records, v1, v2);
    ASSERT_TRUE(report.ok());

    auto value = [](const SolutionRecord& r, Vector v) {
      const double x = v == Vector::kPerformance ? r.accuracy
                       : v == Vector::kFairness  ? *r.eq_odds_diff
                                                 : r.linkage_risk;
      return v == Vector::kPerformance ? x : -x;  // larger is better
    };
    std::map<std::string, size_t> base;
    for (size_t i = 0; i < records.size(); ++i) {
      const auto it = base.find(records[i].dataset);
      if (it == base.end()) {
        base[records[i].dataset] = i;
        continue;
      }
      const SolutionRecord& b = records[it->second];
      const SolutionRecord& r = records[i];
      const double vr = value(r, v1), vb = value(b, v1);
      if (vr > vb || (vr == vb && std::tie(r.variant_id, r.algorithm, r.fairness_method) <
                                      std::tie(b.variant_id, b.algorithm, b.fairness_method))) {
        it->second = i;
      }
    }
    std::map<std::string, std::array<int, 5>> tally;  // n, win, draw, loss, v3 win
    for (size_t i = 0; i < records.size(); ++i) {
      const size_t b = base[records[i].dataset];
      if (i == b) continue;
      auto& t = tally[records[i].Family()];
      ++t[0];
      const double a2 = value(records[i], v2), b2 = value(records[b], v2);
      ++t[a2 > b2 ? 1 : a2 == b2 ? 2 : 3];
      if (value(records[i], v3) > value(records[b], v3)) ++t[4];
    }
    ASSERT_EQ(report->families.size(), tally.size());
    for (const FamilyOutcome& f : report->families) {
      const auto& t = tally.at(f.family);
      EXPECT_EQ(f.count, static_cast<size_t>(t[0]));
      EXPECT_DOUBLE_EQ(f.win, static_cast<double>(t[1]) / t[0]);
      EXPECT_DOUBLE_EQ(f.draw, static_cast<double>(t[2]) / t[0]);
      EXPECT_DOUBLE_EQ(f.loss, static_cast<double>(t[3]) / t[0]);
      EXPECT_DOUBLE_EQ(f.companion_win, static_cast<double>(t[4]) / t[0]);
      EXPECT_NEAR(f.win + f.draw + f.loss, 1.0, 1e-9);
    }
  }
}

TEST(PathTest, PermutationInvariantAndBaselineExcluded) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SolutionRecord> records = RandomRecords(rng, 25, 2);
    absl::StatusOr<PathReport> a =
        OptimizationPath(records, Vector::kPrivacy, Vector::kPerformance);
    rng.Shuffle(records);
    absl::StatusOr<PathReport> b =
        OptimizationPath(records, Vector::kPrivacy, Vector::kPerformance);
    ASSERT_TRUE(a.ok() && b.ok());
    ASSERT_EQ(a->families.size(), b->families.size());
    size_t counted = 0;
    for (size_t f = 0; f < a->families.size(); ++f) {
      EXPECT_EQ(a->families[f].family, b->families[f].family);
      EXPECT_EQ(a->families[f].win, b->families[f].win);
      EXPECT_EQ(a->families[f].loss, b->families[f].loss);
      counted += a->families[f].count;
    }
    EXPECT_EQ(counted + SelectBaselines(records, Vector::kPrivacy).size(),
              records.size());
  }
}

TEST(PathTest, RecordsWithoutFairnessAreExcluded) {
  std::vector<SolutionRecord> records = {Rec("d", "a", 0.9, 0.1, 0.3),
                                         Rec("d", "b", 0.8, 0.2, 0.3),
                                         Rec("d", "c", 0.7, 0.2, 0.3)};
  records[2].eq_odds_diff.reset();
  absl::StatusOr<PathReport> r =
      OptimizationPath(records, Vector::kPerformance, Vector::kPrivacy);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->excluded, 1u);
  EXPECT_EQ(r->families[0].count, 1u);
}

TEST(AverageRankTest, DominantRecordWins) {
  std::vector<SolutionRecord> records = {Rec("d", "a", 0.7, 0.3, 0.5),
                                         Rec("d", "b", 0.9, 0.1, 0.1),
                                         Rec("d", "c", 0.8, 0.2, 0.3)};
  EXPECT_EQ(AverageRankSolutions(records).at("d").index, 1u);
}

TEST(AverageRankTest, MeanRankArithmetic) {
  // A ranks (1, 2, 2), B ranks (2, 1, 1).
  std::vector<SolutionRecord> records = {Rec("d", "a", 0.9, 0.3, 0.5),
                                         Rec("d", "b", 0.8, 0.1, 0.1)};
  const RankedSolution r = AverageRankSolutions(records).at("d");
  EXPECT_EQ(r.index, 1u);
  EXPECT_NEAR(r.mean_rank, 4.0 / 3.0, 1e-12);
}

TEST(AverageRankTest, MatchesNaiveRanking) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<SolutionRecord> records = RandomRecords(rng, 10, 1);
    std::vector<double> mean(records.size(), 0.0);
    for (Vector v : kAllVectors) {
      for (size_t i = 0; i < records.size(); ++i) {
        const double vi = *MetricValue(records[i], v);
        double better = 0, equal = 0;
        for (size_t j = 0; j < records.size(); ++j) {
          const double vj = *MetricValue(records[j], v);
          if (vj == vi) ++equal;
          else if (HigherIsBetter(v) ? vj > vi : vj < vi) ++better;
        }
        mean[i] += (better + (equal + 1) / 2.0) / 3.0;
      }
    }
    size_t best = 0;
    for (size_t i = 1; i < records.size(); ++i) {
      if (mean[i] < mean[best] - 1e-12 ||
          (std::abs(mean[i] - mean[best]) <= 1e-12 &&
           records[i].variant_id < records[best].variant_id)) {
        best = i;
      }
    }
    const RankedSolution r = AverageRankSolutions(records).at("d0");
    EXPECT_NEAR(r.mean_rank, mean[best], 1e-12);
    EXPECT_NEAR(mean[r.index], mean[best], 1e-12);
  }
}

TEST(BayesTest, CalibrationCriterion) {
  const testing::CriterionResult r = testing::CheckBayesCalibration(8);
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(BayesTest, Examples) {
  const BayesOptions options;
  const std::vector<double> zeros(20, 0.0);
  EXPECT_GT(BayesSignTest(zeros, true, options)->p_rope, 0.95);
  const std::vector<double> gains = {50, 60, 40};
  EXPECT_GT(BayesSignTest(gains, true, options)->p_win, 0.8);
  EXPECT_GT(BayesSignTest(gains, false, options)->p_loss, 0.8);
  const std::vector<double> symmetric = {-10, 10};
  absl::StatusOr<BayesComparison> s = BayesSignTest(symmetric, true, options);
  ASSERT_TRUE(s.ok());
  EXPECT_NEAR(s->p_win, s->p_loss, 0.05);
  const std::vector<double> single = {5.0};
  absl::StatusOr<BayesComparison> one = BayesSignTest(single, true, options);
  ASSERT_TRUE(one.ok());
  EXPECT_LT(std::max({one->p_win, one->p_rope, one->p_loss}), 0.9);
}

TEST(BayesTest, ProbabilitiesSumToOneAndRopeIsInclusive) {
  const std::vector<double> diffs = {-1.0, 1.0, 0.5, 3.0, -7.0};
  absl::StatusOr<BayesComparison> c = BayesSignTest(diffs, true, BayesOptions{});
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c->ropes, 3u);
  EXPECT_EQ(c->wins, 1u);
  EXPECT_EQ(c->losses, 1u);
  EXPECT_NEAR(c->p_win + c->p_rope + c->p_loss, 1.0, 1e-9);
}

TEST(BayesTest, NonFiniteDiffsAreExcluded) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<double> diffs = {inf, 20.0, -inf};
  absl::StatusOr<BayesComparison> c = BayesSignTest(diffs, true, BayesOptions{});
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c->excluded, 2u);
  EXPECT_EQ(c->wins, 1u);
  const std::vector<double> none = {inf};
  EXPECT_FALSE(BayesSignTest(none, true, BayesOptions{}).ok());
}

TEST(BayesTest, MonteCarloMatchesDirichletQuadrature) {
  Rng rng(9);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> diffs;
    const size_t n = 1 + rng.UniformInt(10);
    for (size_t i = 0; i < n; ++i) diffs.push_back(rng.Uniform(-6, 6));
    BayesOptions options;
    options.seed = rng.NextU64();
    absl::StatusOr<BayesComparison> c = BayesSignTest(diffs, true, options);
    ASSERT_TRUE(c.ok());
    const double s = options.prior_strength / 3.0;
    const std::array<double, 3> alpha = {static_cast<double>(c->wins) + s,
                                         static_cast<double>(c->ropes) + s,
                                         static_cast<double>(c->losses) + s};
    EXPECT_NEAR(c->p_win, testing::DirichletArgmaxProbability(alpha, 0), 0.01);
    EXPECT_NEAR(c->p_rope, testing::DirichletArgmaxProbability(alpha, 1), 0.01);
    EXPECT_NEAR(c->p_loss, testing::DirichletArgmaxProbability(alpha, 2), 0.01);
  }
}

TEST(DirichletOracleTest, SymmetricCaseIsOneThird) {
  const std::array<double, 3> alpha = {2.5, 2.5, 2.5};
  for (size_t c = 0; c < 3; ++c) {
    EXPECT_NEAR(testing::DirichletArgmaxProbability(alpha, c), 1.0 / 3.0, 1e-6);
  }
}

TEST(ThreeWayTest, IdenticalOptimaGiveRope) {
  std::vector<SolutionRecord> records;
  for (int d = 0; d < 8; ++d) {
    const std::string name = "d" + std::to_string(d);
    records.push_back(Rec(name, "best", 0.9, 0.1, 0.1));
    records.push_back(Rec(name, "worse", 0.7, 0.3, 0.5));
  }
  absl::StatusOr<std::vector<ThreeWayEntry>> entries =
      ThreeWayComparison(records, BayesOptions{});
  ASSERT_TRUE(entries.ok());
  ASSERT_EQ(entries->size(), 3u);
  for (const ThreeWayEntry& e : *entries) {
    ASSERT_TRUE(e.comparison.has_value());
    EXPECT_EQ(e.datasets, 8u);
    EXPECT_GT(e.comparison->p_rope, 0.95);
  }
}

TEST(ThreeWayTest, DiffsMatchRecount) {
  // Per dataset: record a maximizes accuracy, b is best on fairness and
  // privacy, so b has the better mean rank.
  std::vector<SolutionRecord> records;
  std::vector<double> expected;
  for (int d = 0; d < 7; ++d) {
    const std::string name = "d" + std::to_string(d);
    const double acc = 0.8 + 0.01 * d;
    records.push_back(Rec(name, "a", acc, 0.3, 0.6));
    records.push_back(Rec(name, "b", acc - 0.05, 0.1, 0.2));
    expected.push_back(PercentageDifference(acc - 0.05, acc));
  }
  BayesOptions options;
  options.seed = 4;
  absl::StatusOr<std::vector<ThreeWayEntry>> entries =
      ThreeWayComparison(records, options);
  ASSERT_TRUE(entries.ok());
  bool seen = false;
  for (const ThreeWayEntry& e : *entries) {
    if (e.vector != Vector::kPerformance) continue;
    seen = true;
    ASSERT_TRUE(e.comparison.has_value());
    EXPECT_EQ(e.comparison->diffs, expected);
    EXPECT_EQ(e.comparison->losses, 7u);
    absl::StatusOr<BayesComparison> again = BayesSignTest(expected, true, options);
    ASSERT_TRUE(again.ok());
    EXPECT_NEAR(again->p_loss, e.comparison->p_loss, 0.02);
  }
  EXPECT_TRUE(seen);
}

TEST(ResultsTableTest, RoundTripWithMissingFairness) {
  Rng rng(10);
  std::vector<SolutionRecord> records = RandomRecords(rng, 30, 3);
  records[4].eq_odds_diff.reset();
  records[7].accuracy = 1.0 / 3.0;
  SortRecords(records);
  absl::StatusOr<std::vector<SolutionRecord>> back =
      ParseResultsTable(FormatResultsTable(records));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, records);
}

TEST(ResultsTableTest, FamilyJoinsFairnessMethod) {
  EXPECT_EQ(Rec("d", "a", 0.5, 0.1, 0.1).Family(), "PrivateSMOTE");
  EXPECT_EQ(Rec("d", "a", 0.5, 0.1, 0.1, "CTGAN", "EG").Family(), "CTGAN+EG");
}

}  // namespace
}  // namespace tradeoff

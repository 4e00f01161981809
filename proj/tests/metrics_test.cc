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


#include "gtest/gtest.h"
#include "criteria.h"
#include "oracles.h"
#include "tradeoff/fairness/metrics.h"

namespace tradeoff {
namespace {

GroupedPredictions Make(std::vector<int> predicted, std::vector<int> truth,
                        std::vector<int> group) {
  return GroupedPredictions{std::move(predicted), std::move(truth),
                            std::move(group)};
}

TEST(DemographicParityTest, EqualRatesGiveZero) {
  std::vector<int> pred, truth(20, 0), group;
  for (int g = 0; g < 2; ++g) {
    for (int i = 0; i < 10; ++i) {
      pred.push_back(i < 6 ? 1 : 0);
      group.push_back(g);
    }
  }
  EXPECT_EQ(*DemographicParityDifference(Make(pred, truth, group)), 0.0);
}

TEST(DemographicParityTest, DirectFormula) {
  std::vector<int> pred, truth(20, 0), group;
  for (int i = 0; i < 10; ++i) {
    pred.push_back(i < 8 ? 1 : 0);
    group.push_back(1);
  }
  for (int i = 0; i < 10; ++i) {
    pred.push_back(i < 2 ? 1 : 0);
    group.push_back(0);
  }
  EXPECT_NEAR(*DemographicParityDifference(Make(pred, truth, group)), 0.6, 1e-15);
}

TEST(DemographicParityTest, EmptyGroupIsUndefined) {
  absl::StatusOr<double> dp = DemographicParityDifference(Make({1, 0}, {1, 0}, {1, 1}));
  EXPECT_EQ(dp.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(EqualizedOddsTest, PerfectClassifierIsZero) {
  const std::vector<int> truth = {1, 0, 1, 0, 1, 0};
  absl::StatusOr<FairnessReport> r =
      EqualizedOddsDifference(Make(truth, truth, {1, 1, 1, 0, 0, 0}));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->equalized_odds_diff, 0.0);
}

TEST(EqualizedOddsTest, DirectFormula) {
  // Group 1: TPR 2/2, FPR 1/2. Group 0: TPR 1/2, FPR 1/2.
  absl::StatusOr<FairnessReport> r = EqualizedOddsDifference(
      Make({1, 1, 1, 0, 1, 0, 1, 0}, {1, 1, 0, 0, 1, 1, 0, 0},
           {1, 1, 1, 1, 0, 0, 0, 0}));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->tpr_diff, 0.5);
  EXPECT_EQ(r->fpr_diff, 0.0);
  EXPECT_EQ(r->equalized_odds_diff, 0.5);
  EXPECT_EQ(r->groups[1].tpr, 1.0);
  EXPECT_EQ(r->groups[0].fpr, 0.5);
}

TEST(EqualizedOddsTest, EmptyCellNamesTheCell) {
  absl::StatusOr<FairnessReport> r =
      EqualizedOddsDifference(Make({1, 0, 1}, {1, 0, 1}, {1, 1, 0}));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_NE(r.status().message().find("group"), std::string_view::npos);
}

TEST(EqualizedOddsTest, RejectsMismatchedLengths) {
  EXPECT_FALSE(EqualizedOddsDifference(Make({1}, {1, 0}, {1, 0})).ok());
}

TEST(EqualizedOddsTest, InvariantsOnRandomPredictions) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const size_t n = 4 + rng.UniformInt(60);
    std::vector<int> pred(n), truth(n), group(n);
    for (size_t i = 0; i < n; ++i) {
      pred[i] = rng.Bernoulli(0.5);
      truth[i] = rng.Bernoulli(0.5);
      group[i] = rng.Bernoulli(0.5);
    }
    absl::StatusOr<FairnessReport> r = EqualizedOddsDifference(Make(pred, truth, group));
    if (!r.ok()) continue;
    EXPECT_EQ(r->equalized_odds_diff, std::max(r->tpr_diff, r->fpr_diff));
    for (const GroupRates& g : r->groups) {
      for (double rate : {g.selection_rate, g.tpr, g.fpr}) {
        EXPECT_GE(rate, 0.0);
        EXPECT_LE(rate, 1.0);
      }
    }
  }
}

TEST(MetricOracleSuite, TwoHundredRandomTables) {
  const testing::CriterionResult r = testing::CheckMetricOracles(77, 200);
  EXPECT_TRUE(r.pass) << r.detail;
}

}  // namespace
}  // namespace tradeoff

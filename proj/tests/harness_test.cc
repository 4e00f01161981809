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


#include <filesystem>
#include <set>

#include "gtest/gtest.h"
#include "oracles.h"
#include "tradeoff/common/csv.h"
#include "tradeoff/harness/experiment.h"
#include "tradeoff/harness/experiment_config.h"
#include "tradeoff/harness/report.h"

namespace tradeoff {
namespace {

namespace fs = std::filesystem;

const fs::path& WorkDir() {
  static const fs::path dir = fs::temp_directory_path() / "tradeoff_harness_test";
  return dir;
}

std::string Read(const fs::path& p) {
  absl::StatusOr<std::string> text = ReadTextFile(p.string());
  return text.ok() ? *text : "<missing>";
}

class ToyRunTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    fs::remove_all(WorkDir());
    config_path_ = new std::string(
        testing::WriteToyExperiment((WorkDir() / "input").string(), 300));
    absl::StatusOr<ExperimentConfig> config = LoadExperimentConfig(*config_path_);
    ASSERT_TRUE(config.ok()) << config.status();
    config_ = new ExperimentConfig(*config);
    absl::StatusOr<RunSummary> run =
        RunExperiment(*config_, RunOptions{(WorkDir() / "a").string(), 1, {}});
    ASSERT_TRUE(run.ok()) << run.status();
    first_ = new RunSummary(*run);
  }
  static void TearDownTestSuite() {
    delete config_path_;
    delete config_;
    delete first_;
    fs::remove_all(WorkDir());
  }

  static std::string* config_path_;
  static ExperimentConfig* config_;
  static RunSummary* first_;
};

std::string* ToyRunTest::config_path_ = nullptr;
ExperimentConfig* ToyRunTest::config_ = nullptr;
RunSummary* ToyRunTest::first_ = nullptr;

TEST_F(ToyRunTest, ProducesRecordsForEveryCell) {
  ASSERT_NE(first_, nullptr);
  // Two variants x two learners x two fairness methods.
  EXPECT_EQ(first_->cells, 8u);
  EXPECT_EQ(first_->failed, 0u);
  EXPECT_EQ(first_->records.size(), 8u);
  std::set<std::string> families;
  for (const SolutionRecord& r : first_->records) {
    EXPECT_TRUE(r.Validate().ok()) << r.Validate();
    families.insert(r.Family());
    if (r.variant_id == "original") EXPECT_EQ(r.linkage_risk, 1.0);
  }
  EXPECT_TRUE(families.count("PrivateSMOTE"));
  EXPECT_TRUE(families.count("PrivateSMOTE+EG"));
  absl::StatusOr<std::vector<SolutionRecord>> table =
      ReadResultsTable((WorkDir() / "a" / "results.csv").string());
  ASSERT_TRUE(table.ok()) << table.status();
  EXPECT_EQ(*table, first_->records);
}

TEST_F(ToyRunTest, RerunIsIdempotent) {
  ASSERT_NE(first_, nullptr);
  const std::string before = Read(WorkDir() / "a" / "results.csv");
  absl::StatusOr<RunSummary> again =
      RunExperiment(*config_, RunOptions{(WorkDir() / "a").string(), 1, {}});
  ASSERT_TRUE(again.ok()) << again.status();
  EXPECT_EQ(again->trained, 0u);
  EXPECT_EQ(again->skipped, first_->cells);
  EXPECT_EQ(Read(WorkDir() / "a" / "results.csv"), before);
}

TEST_F(ToyRunTest, SameSeedSameBytesAcrossWorkerCounts) {
  ASSERT_NE(first_, nullptr);
  absl::StatusOr<RunSummary> other =
      RunExperiment(*config_, RunOptions{(WorkDir() / "b").string(), 2, {}});
  ASSERT_TRUE(other.ok()) << other.status();
  EXPECT_EQ(other->results_digest, first_->results_digest);
  EXPECT_EQ(Read(WorkDir() / "a" / "results.csv"), Read(WorkDir() / "b" / "results.csv"));
  for (const auto& entry : fs::directory_iterator(WorkDir() / "a" / "reports")) {
    EXPECT_EQ(Read(entry.path()),
              Read(WorkDir() / "b" / "reports" / entry.path().filename()))
        << entry.path().filename();
  }
}

TEST_F(ToyRunTest, ReportHasEveryTable) {
  ASSERT_NE(first_, nullptr);
  std::set<std::string> names;
  for (const auto& entry : fs::directory_iterator(WorkDir() / "a" / "reports")) {
    names.insert(entry.path().filename().string());
  }
  for (const char* name :
       {"paths_acc_fair.csv", "paths_acc_priv.csv", "paths_fair_acc.csv",
        "paths_fair_priv.csv", "paths_priv_acc.csv", "paths_priv_fair.csv",
        "bayes.csv", "average_rank.csv", "baselines.csv", "manifest.json"}) {
    EXPECT_TRUE(names.count(name)) << name;
  }
  absl::StatusOr<CsvTable> path =
      ReadCsvFile((WorkDir() / "a" / "reports" / "paths_acc_fair.csv").string());
  ASSERT_TRUE(path.ok());
  EXPECT_EQ(path->header.size(), 9u);
  EXPECT_FALSE(path->rows.empty());
}

TEST_F(ToyRunTest, DifferentSeedChangesDigest) {
  ASSERT_NE(config_, nullptr);
  nlohmann::json j = nlohmann::json::parse(Read(*config_path_));
  j["seed"] = 4;
  absl::StatusOr<ExperimentConfig> other =
      ParseExperimentConfig(j, fs::path(*config_path_).parent_path().string());
  ASSERT_TRUE(other.ok());
  EXPECT_NE(other->digest, config_->digest);
}

TEST(EvaluateTest, ConstantPositiveModelHasZeroEqualizedOdds) {
  FeatureMatrix test;
  test.rows = 6;
  test.cols = 1;
  test.numeric = {true};
  test.values = {0, 1, 2, 3, 4, 5};
  test.labels = {1, 0, 1, 0, 1, 1};
  const std::vector<int> groups = {1, 1, 0, 0, 1, 0};
  std::vector<Column> cols(1);
  cols[0] = {"y", ColumnKind::kCategorical, {Role::kTarget}, {}, {"1", "0"}};
  const SyntheticVariant variant =
      OriginalVariant(Dataset::Create("t", cols, "1").value());
  SolutionMeta meta{"toy", &variant, LearnerKind::kLogistic, kNoFairnessMethod};
  absl::StatusOr<Evaluation> e = EvaluateSolution(ConstantClassifier(1.0), test, groups,
                                                  meta, LinkageRisk{2, 4, 0.5});
  ASSERT_TRUE(e.ok()) << e.status();
  ASSERT_TRUE(e->record.eq_odds_diff.has_value());
  EXPECT_EQ(*e->record.eq_odds_diff, 0.0);
  EXPECT_NEAR(e->record.accuracy, 4.0 / 6.0, 1e-15);
  EXPECT_EQ(e->record.linkage_risk, 0.5);
  EXPECT_EQ(e->record.algorithm, "Agnostic-Logit");
  EXPECT_EQ(e->record.method, "Original");
}

TEST(EvaluateTest, UndefinedFairnessLeavesFieldEmpty) {
  FeatureMatrix test;
  test.rows = 3;
  test.cols = 1;
  test.numeric = {true};
  test.values = {0, 1, 2};
  test.labels = {1, 0, 1};
  const std::vector<int> groups = {1, 1, 1};
  std::vector<Column> cols(1);
  cols[0] = {"y", ColumnKind::kCategorical, {Role::kTarget}, {}, {"1", "0"}};
  const SyntheticVariant variant =
      OriginalVariant(Dataset::Create("t", cols, "1").value());
  SolutionMeta meta{"toy", &variant, LearnerKind::kRandomForest, kEgMethod};
  absl::StatusOr<Evaluation> e = EvaluateSolution(ConstantClassifier(0.0), test, groups,
                                                  meta, LinkageRisk{});
  ASSERT_TRUE(e.ok()) << e.status();
  EXPECT_FALSE(e->record.eq_odds_diff.has_value());
  EXPECT_FALSE(e->fairness_error.empty());
  EXPECT_EQ(e->record.algorithm, "EG-RF");
}

TEST(ConfigTest, NamedGridsAndDefaults) {
  SynthesisConfig s;
  ASSERT_TRUE(ApplyNamedGrid("single", s).ok());
  EXPECT_EQ(s.ratios, std::vector<int>{1});
  EXPECT_EQ(s.knns, std::vector<int>{1});
  EXPECT_EQ(s.epsilons, std::vector<double>{0.1});
  ASSERT_TRUE(ApplyNamedGrid("full", s).ok());
  EXPECT_EQ(s.ratios.size() * s.knns.size() * s.epsilons.size(), 27u);
  EXPECT_FALSE(ApplyNamedGrid("huge", s).ok());
}

TEST(ConfigTest, RejectsBadInput) {
  const std::string dir = (WorkDir().parent_path() / "tradeoff_config_test").string();
  fs::remove_all(dir);
  const std::string path = testing::WriteToyExperiment(dir, 50);
  nlohmann::json j = nlohmann::json::parse(Read(path));
  EXPECT_TRUE(ParseExperimentConfig(j, dir).ok());
  nlohmann::json bad = j;
  bad.erase("dataset");
  EXPECT_FALSE(ParseExperimentConfig(bad, dir).ok());
  bad = j;
  bad["fairness"]["methods"] = {"postprocess"};
  EXPECT_FALSE(ParseExperimentConfig(bad, dir).ok());
  bad = j;
  bad["learners"] = nlohmann::json::array();
  EXPECT_FALSE(ParseExperimentConfig(bad, dir).ok());
  bad = j;
  bad["synthesis"] = {{"privatesmote", false}};
  EXPECT_FALSE(ParseExperimentConfig(bad, dir).ok());
  fs::remove_all(dir);
}

TEST(CellIdTest, Format) {
  EXPECT_EQ(CellId("original", LearnerKind::kRandomForest, kNoFairnessMethod),
            "original__rf__agnostic");
  EXPECT_EQ(CellId("privatesmote_r1_k1_e0.1", LearnerKind::kLogistic, kEgMethod),
            "privatesmote_r1_k1_e0.1__logit__eg");
}

}  // namespace
}  // namespace tradeoff

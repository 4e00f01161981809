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
#include <filesystem>
#include <map>

#include "gtest/gtest.h"
#include "oracles.h"
#include "tradeoff/common/csv.h"
#include "tradeoff/data/dataset.h"
#include "tradeoff/data/split.h"
#include "tradeoff/learning/feature_matrix.h"

namespace tradeoff {
namespace {

namespace fs = std::filesystem;

class DataFileTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tradeoff_data_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    const std::string path = (dir_ / name).string();
    EXPECT_TRUE(WriteTextFile(path, text).ok());
    return path;
  }

  fs::path dir_;
};

constexpr char kCsv[] =
    "age,job,race,income\n"
    "30,clerk,White,>50K\n"
    "45,farmer,Black,<=50K\n"
    "?,clerk,White,<=50K\n"
    "22,teacher,Asian,>50K\n"
    "61,clerk,Black,<=50K\n";

constexpr char kConfig[] = R"({
  "name": "mini",
  "path": "mini.csv",
  "target": "income",
  "positive_class": ">50K",
  "quasi_identifiers": ["age", "job"],
  "protected": [
    {"attribute": "race", "privileged_values": ["White"]},
    {"attribute": "age", "threshold": 25, "direction": ">="}
  ],
  "fairness_attribute": "race",
  "categorical_overrides": {"age": "numeric"}
})";

TEST_F(DataFileTest, LoadsDropsMissingAndAttachesRoles) {
  Write("mini.csv", kCsv);
  const std::string config_path = Write("mini.json", kConfig);
  absl::StatusOr<DatasetConfig> config = LoadDatasetConfig(config_path);
  ASSERT_TRUE(config.ok()) << config.status();
  absl::StatusOr<Dataset> data = LoadDataset(config->path, *config);
  ASSERT_TRUE(data.ok()) << data.status();
  EXPECT_EQ(data->num_rows(), 4u);
  EXPECT_EQ(data->target().name, "income");
  EXPECT_EQ(data->BinaryTarget(), (std::vector<int>{1, 0, 1, 0}));
  EXPECT_TRUE(data->column(*data->FindColumn("age")).is_numeric());
  EXPECT_EQ(data->ColumnsWithRole(Role::kQuasiIdentifier),
            (std::vector<std::string>{"age", "job"}));

  absl::StatusOr<Dataset> binary = BinarizeAllProtected(*data, *config);
  ASSERT_TRUE(binary.ok()) << binary.status();
  EXPECT_EQ(binary->column(*binary->FindColumn("race")).labels,
            (std::vector<std::string>{"1", "0", "0", "0"}));
  EXPECT_EQ(binary->column(*binary->FindColumn("age")).labels,
            (std::vector<std::string>{"1", "1", "0", "1"}));
}

TEST_F(DataFileTest, CsvWriteReadRoundTrip) {
  Rng rng(4);
  const Dataset table = testing::RandomRealTable(rng, testing::TableSpec{});
  const std::string path = (dir_ / "t.csv").string();
  ASSERT_TRUE(WriteDatasetCsv(table, path).ok());
  absl::StatusOr<Dataset> back = LoadDatasetLike(path, table);
  ASSERT_TRUE(back.ok()) << back.status();
  ASSERT_EQ(back->num_rows(), table.num_rows());
  for (size_t c = 0; c < table.num_columns(); ++c) {
    EXPECT_EQ(back->column(c).numbers, table.column(c).numbers);
    EXPECT_EQ(back->column(c).labels, table.column(c).labels);
  }
}

TEST_F(DataFileTest, LoadLikeRejectsWrongColumns) {
  Rng rng(4);
  const Dataset table = testing::RandomTable(rng, testing::TableSpec{});
  const std::string path = Write("bad.csv", "n0,c0\n1,v0\n");
  EXPECT_FALSE(LoadDatasetLike(path, table).ok());
}

TEST(SplitTest, PartitionPropertiesOnRandomTables) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    testing::TableSpec spec = testing::RandomSpec(rng, 200);
    spec.rows = std::max<size_t>(spec.rows, 5);
    const Dataset data = testing::RandomTable(rng, spec);
    const uint64_t seed = rng.NextU64();
    absl::StatusOr<Split> split = SplitDataset(data, seed);
    ASSERT_TRUE(split.ok()) << split.status();
    const size_t n = data.num_rows();
    EXPECT_EQ(split->train_rows.size(), static_cast<size_t>(std::floor(0.8 * n + 0.5)));
    EXPECT_EQ(split->train_rows.size() + split->test_rows.size(), n);
    EXPECT_TRUE(std::is_sorted(split->train_rows.begin(), split->train_rows.end()));
    EXPECT_TRUE(std::is_sorted(split->test_rows.begin(), split->test_rows.end()));
    std::vector<size_t> all = split->train_rows;
    all.insert(all.end(), split->test_rows.begin(), split->test_rows.end());
    std::sort(all.begin(), all.end());
    for (size_t i = 0; i < n; ++i) ASSERT_EQ(all[i], i);

    const std::vector<int> y = data.BinaryTarget();
    std::map<int, size_t> total, train;
    for (size_t i = 0; i < n; ++i) ++total[y[i]];
    for (size_t r : split->train_rows) ++train[y[r]];
    if (split->stratified) {
      for (const auto& [label, count] : total) {
        const double quota = 0.8 * static_cast<double>(count);
        EXPECT_GE(static_cast<double>(train[label]), std::floor(quota));
        EXPECT_LE(static_cast<double>(train[label]), std::floor(quota) + 1);
      }
    }
    absl::StatusOr<Split> again = SplitDataset(data, seed);
    ASSERT_TRUE(again.ok());
    EXPECT_EQ(again->train_rows, split->train_rows);
    EXPECT_EQ(split->train.num_rows(), split->train_rows.size());
  }
}

TEST(SplitTest, TooFewRowsIsAnError) {
  Rng rng(22);
  testing::TableSpec spec;
  spec.rows = 4;
  EXPECT_FALSE(SplitDataset(testing::RandomTable(rng, spec), 1).ok());
}

TEST(EncoderTest, OneHotWithUnseenLevelsAsZeros) {
  std::vector<Column> train_cols(3), test_cols(3);
  train_cols[0] = {"x", ColumnKind::kNumeric, {}, {1.0, 2.0, 3.0}, {}};
  train_cols[1] = {"c", ColumnKind::kCategorical, {}, {}, {"b", "a", "b"}};
  train_cols[2] = {"y", ColumnKind::kCategorical, {Role::kTarget}, {}, {"1", "0", "1"}};
  test_cols = train_cols;
  test_cols[1].labels = {"a", "z", "b"};
  const Dataset train = Dataset::Create("t", train_cols, "1").value();
  const Dataset test = Dataset::Create("t", test_cols, "1").value();
  absl::StatusOr<FeatureEncoder> encoder = FeatureEncoder::Fit(train);
  ASSERT_TRUE(encoder.ok()) << encoder.status();
  EXPECT_EQ(encoder->num_features(), 3u);
  absl::StatusOr<FeatureMatrix> m = encoder->Transform(test);
  ASSERT_TRUE(m.ok()) << m.status();
  EXPECT_EQ(m->values, (std::vector<double>{1, 1, 0, 2, 0, 0, 3, 0, 1}));
  EXPECT_EQ(m->labels, (std::vector<int>{1, 0, 1}));
  absl::StatusOr<FeatureEncoder> back = FeatureEncoder::FromJson(encoder->ToJson());
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(back->Transform(test)->values, m->values);
}

TEST(StandardizerTest, ZeroMeanUnitVariance) {
  Rng rng(8);
  const FeatureMatrix x = testing::RandomMatrix(rng, 500, 3);
  const FeatureMatrix z = Standardizer::Fit(x).Apply(x);
  for (size_t j = 0; j < 3; ++j) {
    double mean = 0.0, sq = 0.0;
    for (size_t i = 0; i < z.rows; ++i) mean += z.at(i, j);
    mean /= static_cast<double>(z.rows);
    for (size_t i = 0; i < z.rows; ++i) sq += std::pow(z.at(i, j) - mean, 2);
    EXPECT_NEAR(mean, 0.0, 1e-12);
    EXPECT_NEAR(sq / static_cast<double>(z.rows), 1.0, 1e-9);
  }
}

}  // namespace
}  // namespace tradeoff

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

#ifndef TRADEOFF_LEARNING_FEATURE_MATRIX_H_
#define TRADEOFF_LEARNING_FEATURE_MATRIX_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "tradeoff/data/dataset.h"

namespace tradeoff {

// Dense row-major design matrix with binary labels and optional weights.
struct FeatureMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> values;  // rows * cols
  std::vector<int> labels;     // 0/1; may be empty for unlabeled data
  std::vector<double> weights;  // empty means unit weights
  std::vector<bool> numeric;    // per feature: true for pass-through numerics

  std::span<const double> row(size_t i) const {
    return {values.data() + i * cols, cols};
  }
  double at(size_t i, size_t j) const { return values[i * cols + j]; }
  double weight(size_t i) const { return weights.empty() ? 1.0 : weights[i]; }

  // Rows in the given order; labels and weights follow.
  FeatureMatrix Subset(std::span<const size_t> indices) const;
  FeatureMatrix WithWeights(std::vector<double> w) const;
  FeatureMatrix WithLabels(std::vector<int> y) const;
};

// One-hot encoding of categorical attributes plus pass-through numerics.
// Fitted on a training set and then applied unchanged to other data: a
// category never seen at fit time encodes as an all-zero group. The target
// is excluded from the features and becomes the label vector. Categorical
// levels are ordered lexicographically.
class FeatureEncoder {
 public:
  static absl::StatusOr<FeatureEncoder> Fit(const Dataset& train);

  absl::StatusOr<FeatureMatrix> Transform(const Dataset& data) const;

  size_t num_features() const { return num_features_; }
  std::vector<std::string> FeatureNames() const;

  nlohmann::json ToJson() const;
  static absl::StatusOr<FeatureEncoder> FromJson(const nlohmann::json& j);

 private:
  struct Block {
    std::string column;
    ColumnKind kind = ColumnKind::kNumeric;
    std::vector<std::string> levels;
    size_t offset = 0;
  };
  std::vector<Block> blocks_;
  std::string target_;
  std::string positive_label_;
  size_t num_features_ = 0;
};

// Mean 0 / sd 1 rescaling of the numeric features, fitted on training rows
// (weighted when the matrix carries weights). One-hot features are left
// untouched; zero-variance columns keep scale 1.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer Fit(const FeatureMatrix& x);
  FeatureMatrix Apply(const FeatureMatrix& x) const;
  void ApplyRow(std::span<const double> in, std::span<double> out) const;
};

struct EncodedSplit {
  FeatureEncoder encoder;
  FeatureMatrix train;
  FeatureMatrix test;
  std::vector<int> train_groups;  // 1 = privileged
  std::vector<int> test_groups;
};

// Binary group membership from an already binarized protected column
// (labels "1"/"0").
absl::StatusOr<std::vector<int>> GroupMembership(const Dataset& data,
                                                 std::string_view attribute);

// Fits the encoder on `train` and applies it to both sets. The protected
// attribute stays a feature; its membership vectors are returned as well.
absl::StatusOr<EncodedSplit> Encode(const Dataset& train, const Dataset& test,
                                    std::string_view protected_attribute);

}  // namespace tradeoff

#endif  // TRADEOFF_LEARNING_FEATURE_MATRIX_H_

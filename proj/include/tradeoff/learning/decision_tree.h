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

// CART trees over pre-binned features, shared by the forest and the
// boosting learners.
//
// Each feature is cut into at most kMaxBins ordered bins. A feature with at
// most kMaxBins distinct training values gets one bin per value, so the
// candidate thresholds are exactly the midpoints between consecutive
// distinct values. Otherwise bins hold roughly equal row counts. A split
// sends rows with value <= threshold to the left child. Only partitions
// between two bins that are nonempty in the node are candidates; with exact
// bins the threshold is the midpoint of the two node-local values around
// the cut.
//
// Growth is depth first. At a node, the features are scanned in natural
// order (max_features == 0) or in a random order: a lazy front-to-back
// Fisher-Yates shuffle whose k-th swap partner is k + Below(p - k), drawn
// from a SplitMix64 counter stream seeded by DeriveSeed(tree seed, heap id).
// The root has heap id 1 and node h has children 2h and 2h + 1. The first max_features
// features are evaluated; scanning continues past that budget until some
// evaluated feature is non-constant in the node. Within a feature,
// thresholds are scanned in increasing order. A candidate replaces the
// incumbent only when its gain exceeds the incumbent's by more than 1e-12,
// and a node splits only when the winning gain exceeds 1e-12. Gains are
// impurity decreases normalized by the node weight: Gini for
// classification, weighted squared error for regression.
//
// Every node keeps its value (positive-class fraction, or the leaf value
// for regression), so a tree grown to depth D also answers for any smaller
// depth by stopping early.

#ifndef TRADEOFF_LEARNING_DECISION_TREE_H_
#define TRADEOFF_LEARNING_DECISION_TREE_H_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "tradeoff/learning/feature_matrix.h"

namespace tradeoff {

inline constexpr size_t kMaxBins = 255;
inline constexpr double kSplitEpsilon = 1e-12;

class BinnedMatrix {
 public:
  static BinnedMatrix Build(const FeatureMatrix& x);

  size_t rows() const { return rows_; }
  size_t cols() const { return thresholds_.size(); }
  uint8_t code(size_t row, size_t feature) const {
    return codes_[feature * rows_ + row];
  }
  const uint8_t* feature_codes(size_t feature) const {
    return codes_.data() + feature * rows_;
  }
  size_t num_bins(size_t feature) const {
    return thresholds_[feature].size() + 1;
  }
  // Threshold separating bins <= b from bins >= c, for nonempty b < c.
  double SplitThreshold(size_t feature, size_t b, size_t c) const;

 private:
  size_t rows_ = 0;
  std::vector<uint8_t> codes_;  // feature-major
  std::vector<std::vector<double>> thresholds_;
  // Per feature: the value of each bin when binning is exact, else empty.
  std::vector<std::vector<double>> bin_values_;
};

struct TreeNode {
  int feature = -1;  // -1 for a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int depth = 0;
  double value = 0.0;
  double weight = 0.0;  // training weight that reached the node

  bool is_leaf() const { return feature < 0; }
};

class Tree {
 public:
  Tree() = default;
  explicit Tree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  // Value of the leaf reached when descending at most `max_depth` levels.
  double Predict(std::span<const double> row,
                 int max_depth = std::numeric_limits<int>::max()) const;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  int depth() const;

  nlohmann::json ToJson() const;
  static absl::StatusOr<Tree> FromJson(const nlohmann::json& j);

 private:
  std::vector<TreeNode> nodes_;
};

struct TreeOptions {
  int max_depth = std::numeric_limits<int>::max();
  size_t max_features = 0;  // 0 means all features, natural order
  uint64_t seed = 0;
};

// Gini tree on binary labels. Rows with zero weight are ignored.
Tree GrowClassificationTree(const BinnedMatrix& x, std::span<const int> labels,
                            std::span<const double> weights,
                            const TreeOptions& options);

// Least-squares tree on `target`. Node values are
// sum(w * target) / sum(hessian) when `hessian` is given, otherwise the
// weighted mean of the target.
Tree GrowRegressionTree(const BinnedMatrix& x, std::span<const double> target,
                        std::span<const double> weights,
                        std::span<const double> hessian,
                        const TreeOptions& options);

}  // namespace tradeoff

#endif  // TRADEOFF_LEARNING_DECISION_TREE_H_

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

#ifndef TRADEOFF_LEARNING_RANDOM_FOREST_H_
#define TRADEOFF_LEARNING_RANDOM_FOREST_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "tradeoff/learning/decision_tree.h"
#include "tradeoff/learning/feature_matrix.h"
#include "tradeoff/learning/fitted_model.h"

namespace tradeoff {

struct ForestOptions {
  int n_estimators = 100;
  int max_depth = 10;
  uint64_t seed = 0;
  bool bootstrap = true;
  // Features tried per split; unset means max(1, floor(sqrt(p))) and 0
  // means all features in natural order.
  std::optional<size_t> max_features;
};

// Bagged Gini trees. Tree i uses seed DeriveSeed(seed, i) for its bootstrap
// draw and its split sampling, so a forest of N trees is a prefix of any
// larger forest with the same seed. Likewise each tree answers for any
// depth up to the one it was grown with, which lets one large forest serve
// a whole (n_estimators, max_depth) grid exactly.
class RandomForestModel : public Classifier {
 public:
  RandomForestModel(std::shared_ptr<const std::vector<Tree>> trees,
                    int n_estimators, int max_depth)
      : trees_(std::move(trees)),
        n_estimators_(n_estimators),
        max_depth_(max_depth) {}

  // Mean over trees of the positive-class fraction in the reached leaf.
  double Probability(std::span<const double> row) const override;
  nlohmann::json ToJson() const override;
  static absl::StatusOr<RandomForestModel> FromJson(const nlohmann::json& j);

  // The first `n_estimators` trees read to depth `max_depth`; requires
  // values no larger than the current ones.
  RandomForestModel Truncated(int n_estimators, int max_depth) const;

  // Probabilities of Truncated(n, d) for every n in `n_estimators` and d in
  // `depths`, from a single descent per (row, tree). Indexed
  // [n index][d index][row].
  std::vector<std::vector<std::vector<double>>> TruncatedProbabilities(
      const FeatureMatrix& x, std::span<const int> n_estimators,
      std::span<const int> depths) const;

  int n_estimators() const { return n_estimators_; }
  int max_depth() const { return max_depth_; }
  const std::vector<Tree>& trees() const { return *trees_; }

 private:
  std::shared_ptr<const std::vector<Tree>> trees_;
  int n_estimators_;
  int max_depth_;
};

RandomForestModel TrainRandomForest(const BinnedMatrix& x,
                                    std::span<const int> labels,
                                    std::span<const double> weights,
                                    const ForestOptions& options);

// Convenience overload that bins `x` first.
absl::StatusOr<RandomForestModel> TrainRandomForest(const FeatureMatrix& x,
                                                    const ForestOptions& options);

}  // namespace tradeoff

#endif  // TRADEOFF_LEARNING_RANDOM_FOREST_H_

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

#include "tradeoff/learning/random_forest.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "tradeoff/common/random.h"

namespace tradeoff {

using json = nlohmann::json;

double RandomForestModel::Probability(std::span<const double> row) const {
  double sum = 0.0;
  for (int t = 0; t < n_estimators_; ++t) {
    sum += (*trees_)[static_cast<size_t>(t)].Predict(row, max_depth_);
  }
  return sum / static_cast<double>(n_estimators_);
}

json RandomForestModel::ToJson() const {
  json trees = json::array();
  for (int t = 0; t < n_estimators_; ++t) {
    trees.push_back((*trees_)[static_cast<size_t>(t)].ToJson());
  }
  return {{"type", "forest"}, {"max_depth", max_depth_}, {"trees", trees}};
}

absl::StatusOr<RandomForestModel> RandomForestModel::FromJson(const json& j) {
  try {
    auto trees = std::make_shared<std::vector<Tree>>();
    for (const json& t : j.at("trees")) {
      absl::StatusOr<Tree> tree = Tree::FromJson(t);
      if (!tree.ok()) return tree.status();
      trees->push_back(*std::move(tree));
    }
    if (trees->empty()) {
      return absl::InvalidArgumentError("forest record: no trees");
    }
    const int n = static_cast<int>(trees->size());
    return RandomForestModel(std::move(trees), n, j.at("max_depth").get<int>());
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("forest record: ", e.what()));
  }
}

RandomForestModel RandomForestModel::Truncated(int n_estimators,
                                               int max_depth) const {
  return RandomForestModel(trees_, std::min(n_estimators, n_estimators_),
                           std::min(max_depth, max_depth_));
}

std::vector<std::vector<std::vector<double>>>
RandomForestModel::TruncatedProbabilities(const FeatureMatrix& x,
                                          std::span<const int> n_estimators,
                                          std::span<const int> depths) const {
  std::vector<std::vector<std::vector<double>>> out(
      n_estimators.size(),
      std::vector<std::vector<double>>(depths.size(),
                                       std::vector<double>(x.rows, 0.0)));
  std::vector<double> sums(depths.size());
  for (size_t r = 0; r < x.rows; ++r) {
    const auto row = x.row(r);
    std::fill(sums.begin(), sums.end(), 0.0);
    for (int t = 0; t < n_estimators_; ++t) {
      const std::vector<TreeNode>& nodes =
          (*trees_)[static_cast<size_t>(t)].nodes();
      // Depths are visited in the given order; each descent resumes from
      // the previous stopping node when that is still on the path.
      size_t node = 0;
      int previous = 0;
      for (size_t d = 0; d < depths.size(); ++d) {
        const int limit = std::min(depths[d], max_depth_);
        if (limit < previous) node = 0;
        while (!nodes[node].is_leaf() && nodes[node].depth < limit) {
          const TreeNode& n = nodes[node];
          node = static_cast<size_t>(
              row[static_cast<size_t>(n.feature)] <= n.threshold ? n.left
                                                                 : n.right);
        }
        previous = limit;
        sums[d] += nodes[node].value;
      }
      for (size_t k = 0; k < n_estimators.size(); ++k) {
        if (std::min(n_estimators[k], n_estimators_) != t + 1) continue;
        for (size_t d = 0; d < depths.size(); ++d) {
          out[k][d][r] = sums[d] / static_cast<double>(t + 1);
        }
      }
    }
  }
  return out;
}

RandomForestModel TrainRandomForest(const BinnedMatrix& x,
                                    std::span<const int> labels,
                                    std::span<const double> weights,
                                    const ForestOptions& options) {
  const size_t n = x.rows();
  const size_t p = x.cols();
  size_t mtry = options.max_features.value_or(std::max<size_t>(
      1, static_cast<size_t>(std::floor(std::sqrt(static_cast<double>(p))))));
  auto trees = std::make_shared<std::vector<Tree>>();
  trees->reserve(static_cast<size_t>(options.n_estimators));
  std::vector<double> tree_weights(n);
  for (int t = 0; t < options.n_estimators; ++t) {
    const uint64_t tree_seed = DeriveSeed(options.seed, static_cast<uint64_t>(t));
    if (options.bootstrap) {
      std::fill(tree_weights.begin(), tree_weights.end(), 0.0);
      Rng rng(DeriveSeed(tree_seed, "bootstrap"));
      for (size_t k = 0; k < n; ++k) tree_weights[rng.UniformInt(n)] += 1.0;
      if (!weights.empty()) {
        for (size_t i = 0; i < n; ++i) tree_weights[i] *= weights[i];
      }
    } else if (weights.empty()) {
      std::fill(tree_weights.begin(), tree_weights.end(), 1.0);
    } else {
      std::copy(weights.begin(), weights.end(), tree_weights.begin());
    }
    TreeOptions tree_options{options.max_depth, mtry, tree_seed};
    trees->push_back(
        GrowClassificationTree(x, labels, tree_weights, tree_options));
  }
  return RandomForestModel(std::move(trees), options.n_estimators,
                           options.max_depth);
}

absl::StatusOr<RandomForestModel> TrainRandomForest(const FeatureMatrix& x,
                                                    const ForestOptions& options) {
  if (x.rows == 0) return absl::InvalidArgumentError("empty training matrix");
  if (x.labels.size() != x.rows) {
    return absl::InvalidArgumentError("random forest needs labels");
  }
  if (options.n_estimators < 1 || options.max_depth < 1) {
    return absl::InvalidArgumentError(
        "n_estimators and max_depth must be >= 1");
  }
  return TrainRandomForest(BinnedMatrix::Build(x), x.labels, x.weights, options);
}

}  // namespace tradeoff

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

#include "tradeoff/learning/boosting.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace tradeoff {
namespace {

using json = nlohmann::json;

double Sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double LogLoss(int y, double score) {
  const double softplus =
      std::max(score, 0.0) + std::log1p(std::exp(-std::abs(score)));
  return softplus - y * score;
}

}  // namespace

double BoostingModel::Score(std::span<const double> row) const {
  double score = initial_score_;
  for (int t = 0; t < n_estimators_; ++t) {
    score += learning_rate_ * (*trees_)[static_cast<size_t>(t)].Predict(row);
  }
  return score;
}

double BoostingModel::Probability(std::span<const double> row) const {
  return Sigmoid(Score(row));
}

json BoostingModel::ToJson() const {
  json trees = json::array();
  for (int t = 0; t < n_estimators_; ++t) {
    trees.push_back((*trees_)[static_cast<size_t>(t)].ToJson());
  }
  return {{"type", "boosting"},
          {"initial_score", initial_score_},
          {"learning_rate", learning_rate_},
          {"trees", trees}};
}

absl::StatusOr<BoostingModel> BoostingModel::FromJson(const json& j) {
  try {
    auto trees = std::make_shared<std::vector<Tree>>();
    for (const json& t : j.at("trees")) {
      absl::StatusOr<Tree> tree = Tree::FromJson(t);
      if (!tree.ok()) return tree.status();
      trees->push_back(*std::move(tree));
    }
    const int n = static_cast<int>(trees->size());
    return BoostingModel(j.at("initial_score").get<double>(),
                         j.at("learning_rate").get<double>(), std::move(trees),
                         n);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("boosting record: ", e.what()));
  }
}

BoostingModel BoostingModel::Truncated(int n_estimators) const {
  return BoostingModel(initial_score_, learning_rate_, trees_,
                       std::min(n_estimators, n_estimators_));
}

BoostingModel TrainBoosting(const FeatureMatrix& x, const BinnedMatrix& binned,
                            const BoostingOptions& options,
                            std::vector<double>* stage_loss) {
  const size_t n = x.rows;
  double total = 0.0, positive = 0.0;
  for (size_t i = 0; i < n; ++i) {
    total += x.weight(i);
    positive += x.weight(i) * x.labels[i];
  }
  const double rate = std::clamp(total > 0.0 ? positive / total : 0.5, 1e-12,
                                 1.0 - 1e-12);
  const double initial = std::log(rate / (1.0 - rate));

  std::vector<double> score(n, initial);
  std::vector<double> residual(n);
  std::vector<double> weights(n);
  std::vector<double> hessian(n);
  for (size_t i = 0; i < n; ++i) weights[i] = x.weight(i);
  auto mean_loss = [&] {
    double loss = 0.0;
    for (size_t i = 0; i < n; ++i) loss += weights[i] * LogLoss(x.labels[i], score[i]);
    return total > 0.0 ? loss / total : 0.0;
  };
  if (stage_loss != nullptr) {
    stage_loss->clear();
    stage_loss->push_back(mean_loss());
  }

  auto trees = std::make_shared<std::vector<Tree>>();
  trees->reserve(static_cast<size_t>(std::max(options.n_estimators, 0)));
  const TreeOptions tree_options{options.max_depth, 0, 0};
  for (int m = 0; m < options.n_estimators; ++m) {
    for (size_t i = 0; i < n; ++i) {
      const double p = Sigmoid(score[i]);
      residual[i] = x.labels[i] - p;
      hessian[i] = weights[i] * p * (1.0 - p);
    }
    Tree tree =
        GrowRegressionTree(binned, residual, weights, hessian, tree_options);
    for (size_t i = 0; i < n; ++i) {
      score[i] += options.learning_rate * tree.Predict(x.row(i));
    }
    trees->push_back(std::move(tree));
    if (stage_loss != nullptr) stage_loss->push_back(mean_loss());
  }
  return BoostingModel(initial, options.learning_rate, std::move(trees),
                       options.n_estimators);
}

absl::StatusOr<BoostingModel> TrainBoosting(const FeatureMatrix& x,
                                            const BoostingOptions& options,
                                            std::vector<double>* stage_loss) {
  if (x.rows == 0) return absl::InvalidArgumentError("empty training matrix");
  if (x.labels.size() != x.rows) {
    return absl::InvalidArgumentError("boosting needs labels");
  }
  if (options.n_estimators < 1 || options.max_depth < 1 ||
      !(options.learning_rate > 0.0)) {
    return absl::InvalidArgumentError(
        "boosting needs n_estimators >= 1, max_depth >= 1, learning_rate > 0");
  }
  return TrainBoosting(x, BinnedMatrix::Build(x), options, stage_loss);
}

}  // namespace tradeoff

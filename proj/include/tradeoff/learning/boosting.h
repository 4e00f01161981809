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

// Gradient boosting on the logistic loss.
//
//   F_0        = log(p / (1 - p)), p the weighted positive rate clamped to
//                [1e-12, 1 - 1e-12]
//   stage m    r_i = y_i - sigmoid(F_{m-1}(x_i)); a least-squares tree
//              (all features, natural order) is fit to r with weights w;
//              each leaf L takes the Newton value
//              sum_{i in L} w_i r_i / sum_{i in L} w_i p_i (1 - p_i)
//   F_m        = F_{m-1} + learning_rate * tree_m
//
// The model with N stages is a prefix of any longer run with the same
// settings.

#ifndef TRADEOFF_LEARNING_BOOSTING_H_
#define TRADEOFF_LEARNING_BOOSTING_H_

#include <memory>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "tradeoff/learning/decision_tree.h"
#include "tradeoff/learning/feature_matrix.h"
#include "tradeoff/learning/fitted_model.h"

namespace tradeoff {

struct BoostingOptions {
  int n_estimators = 100;
  int max_depth = 3;
  double learning_rate = 0.1;
};

class BoostingModel : public Classifier {
 public:
  BoostingModel(double initial_score, double learning_rate,
                std::shared_ptr<const std::vector<Tree>> trees, int n_estimators)
      : initial_score_(initial_score),
        learning_rate_(learning_rate),
        trees_(std::move(trees)),
        n_estimators_(n_estimators) {}

  double Score(std::span<const double> row) const override;
  double Probability(std::span<const double> row) const override;
  nlohmann::json ToJson() const override;
  static absl::StatusOr<BoostingModel> FromJson(const nlohmann::json& j);

  // The first `n_estimators` stages.
  BoostingModel Truncated(int n_estimators) const;

  double initial_score() const { return initial_score_; }
  double learning_rate() const { return learning_rate_; }
  int n_estimators() const { return n_estimators_; }
  const std::vector<Tree>& trees() const { return *trees_; }

 private:
  double initial_score_;
  double learning_rate_;
  std::shared_ptr<const std::vector<Tree>> trees_;
  int n_estimators_;
};

// `binned` must be BinnedMatrix::Build(x). When `stage_loss` is given it
// receives the weighted mean training log-loss after each stage, starting
// with stage 0 (the constant model).
BoostingModel TrainBoosting(const FeatureMatrix& x, const BinnedMatrix& binned,
                            const BoostingOptions& options,
                            std::vector<double>* stage_loss = nullptr);

absl::StatusOr<BoostingModel> TrainBoosting(
    const FeatureMatrix& x, const BoostingOptions& options,
    std::vector<double>* stage_loss = nullptr);

}  // namespace tradeoff

#endif  // TRADEOFF_LEARNING_BOOSTING_H_

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

// Exponentiated-gradient reduction for fair binary classification.
//
// Moments. For equalized odds there is one moment per (label y, group a)
// cell, gamma_{y,a}(h) = E[h | Y=y, S=a] - E[h | Y=y]; for demographic
// parity one per group, gamma_a(h) = E[h | S=a] - E[h]. Every moment gives
// two constraints, +gamma <= eps and -gamma <= eps.
//
// Round t (t = 1..T):
//   lambda_j = B * exp(theta_j) / (1 + sum_k exp(theta_k)),  B = 1 / eps
//   cost of predicting 1 on row i:
//     c_i = (1 - 2 y_i) / n + sum_j (lambda_j+ - lambda_j-) * d gamma_j / d h_i
//   the base learner is fit on labels 1[c_i < 0] with weights
//   n |c_i| / sum |c|, giving h_t
//   theta_j += (eta / B) * (signed gamma_j(h_t) - eps)
//
// theta starts at 0, so the first round fits the ordinary problem. If h_1
// already meets every constraint the result is h_1 alone. Otherwise the
// result is the prefix mixture {h_1..h_t} minimizing
// training error + B * max(0, max violation - eps), both measured on the
// deterministic mixture prediction. A round whose relabeled data has fewer
// than two weighted rows of some class contributes a constant member.

#ifndef TRADEOFF_FAIRNESS_EXPONENTIATED_GRADIENT_H_
#define TRADEOFF_FAIRNESS_EXPONENTIATED_GRADIENT_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "tradeoff/learning/feature_matrix.h"
#include "tradeoff/learning/fitted_model.h"

namespace tradeoff {

enum class FairnessConstraint { kEqualizedOdds, kDemographicParity };

std::string_view FairnessConstraintName(FairnessConstraint c);  // eo, dp
absl::StatusOr<FairnessConstraint> ParseFairnessConstraint(std::string_view name);

struct EgParams {
  FairnessConstraint constraint = FairnessConstraint::kEqualizedOdds;
  double eps = 0.01;
  int max_iterations = 50;
  double eta = 2.0;
  LearnerKind base = LearnerKind::kLogistic;
  HyperParams base_params;
  uint64_t seed = 0;

  absl::Status Validate() const;
};

// Deterministic reading of a randomized classifier: the probability is the
// share of members voting positive, and the label is 1 when that share
// exceeds one half.
class MixtureModel : public Classifier {
 public:
  explicit MixtureModel(std::vector<std::shared_ptr<const Classifier>> members)
      : members_(std::move(members)) {}

  double Probability(std::span<const double> row) const override;
  nlohmann::json ToJson() const override;
  static absl::StatusOr<MixtureModel> FromJson(const nlohmann::json& j);

  const std::vector<std::shared_ptr<const Classifier>>& members() const {
    return members_;
  }

 private:
  std::vector<std::shared_ptr<const Classifier>> members_;
};

// ClassifierFromJson extended with mixtures.
absl::StatusOr<std::shared_ptr<const Classifier>> LoadClassifier(
    const nlohmann::json& j);

struct EgRound {
  double member_violation = 0.0;  // max signed violation of h_t alone
  double mixture_violation = 0.0;  // of the prefix mixture {h_1..h_t}
  double mixture_error = 0.0;
  double objective = 0.0;
  double best_violation = 0.0;  // running minimum of mixture_violation
  std::vector<double> lambda;  // multipliers used to fit h_t
};

struct EgResult {
  std::shared_ptr<const MixtureModel> model;
  size_t best_prefix = 0;       // number of members kept
  double max_violation = 0.0;   // of the returned mixture on training data
  std::vector<EgRound> rounds;
  std::vector<std::string> flags;
};

// Largest constraint value max_j (signed gamma_j) for the given hard
// predictions; rows are grouped by `groups` (1 = privileged).
absl::StatusOr<double> MaxConstraintViolation(FairnessConstraint constraint,
                                              std::span<const int> predicted,
                                              std::span<const int> labels,
                                              std::span<const int> groups);

absl::StatusOr<EgResult> ExponentiatedGradient(const FeatureMatrix& train,
                                               std::span<const int> groups,
                                               const EgParams& params);

}  // namespace tradeoff

#endif  // TRADEOFF_FAIRNESS_EXPONENTIATED_GRADIENT_H_

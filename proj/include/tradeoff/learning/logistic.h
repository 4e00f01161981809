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

// L2-regularized logistic regression.
//
// Features are standardized with a Standardizer fitted on the training rows.
// In the standardized space, with parameters theta = (beta, b) and weights
// w_i summing to W, the minimized objective is
//
//   L(theta) = (1/W) * [ sum_i w_i * log_loss(y_i, beta.z_i + b)
//                        + ||beta||^2 / (2C) ]
//
// The intercept b is not penalized. Minimization uses damped Newton steps
// with an Armijo backtracking line search and stops once the largest
// absolute gradient component is at most `tolerance`, or after `max_iter`
// Newton steps.

#ifndef TRADEOFF_LEARNING_LOGISTIC_H_
#define TRADEOFF_LEARNING_LOGISTIC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "tradeoff/learning/feature_matrix.h"
#include "tradeoff/learning/fitted_model.h"

namespace tradeoff {

inline constexpr double kLogisticTolerance = 1e-6;

class LogisticModel : public Classifier {
 public:
  LogisticModel(Standardizer standardizer, std::vector<double> coefficients,
                double intercept, bool converged, int64_t iterations)
      : standardizer_(std::move(standardizer)),
        coefficients_(std::move(coefficients)),
        intercept_(intercept),
        converged_(converged),
        iterations_(iterations) {}

  double Probability(std::span<const double> row) const override;
  double Score(std::span<const double> row) const override;
  nlohmann::json ToJson() const override;
  static absl::StatusOr<LogisticModel> FromJson(const nlohmann::json& j);

  const Standardizer& standardizer() const { return standardizer_; }
  // Coefficients on standardized features.
  const std::vector<double>& coefficients() const { return coefficients_; }
  double intercept() const { return intercept_; }
  bool converged() const { return converged_; }
  int64_t iterations() const { return iterations_; }

 private:
  Standardizer standardizer_;
  std::vector<double> coefficients_;
  double intercept_;
  bool converged_;
  int64_t iterations_;
};

// Requires at least two positively weighted rows of each class.
absl::StatusOr<LogisticModel> TrainLogistic(const FeatureMatrix& x, double C,
                                            int64_t max_iter,
                                            double tolerance = kLogisticTolerance);

// Objective and gradient above on an already standardized matrix `z`;
// theta holds the coefficients followed by the intercept.
double LogisticObjective(const FeatureMatrix& z, std::span<const double> theta,
                         double C);
std::vector<double> LogisticGradient(const FeatureMatrix& z,
                                     std::span<const double> theta, double C);

}  // namespace tradeoff

#endif  // TRADEOFF_LEARNING_LOGISTIC_H_

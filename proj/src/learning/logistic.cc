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

#include "tradeoff/learning/logistic.h"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"

namespace tradeoff {
namespace {

using json = nlohmann::json;

double Softplus(double t) {
  return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

double Sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

// Design matrix with a trailing intercept column.
Eigen::MatrixXd DesignMatrix(const FeatureMatrix& z) {
  Eigen::MatrixXd m(z.rows, z.cols + 1);
  for (size_t i = 0; i < z.rows; ++i) {
    for (size_t j = 0; j < z.cols; ++j) m(i, j) = z.at(i, j);
    m(i, z.cols) = 1.0;
  }
  return m;
}

struct Problem {
  Eigen::MatrixXd design;
  Eigen::VectorXd y;
  Eigen::VectorXd w;
  double total_weight = 0.0;
  double inv_c = 0.0;
  Eigen::Index p = 0;  // penalized coefficients

  explicit Problem(const FeatureMatrix& z, double C)
      : design(DesignMatrix(z)),
        y(z.rows),
        w(z.rows),
        inv_c(1.0 / C),
        p(static_cast<Eigen::Index>(z.cols)) {
    for (size_t i = 0; i < z.rows; ++i) {
      y(i) = z.labels[i];
      w(i) = z.weight(i);
    }
    total_weight = w.sum();
  }

  // Objective; fills the gradient and the fitted probabilities if asked.
  double Evaluate(const Eigen::VectorXd& theta, Eigen::VectorXd* gradient,
                  Eigen::VectorXd* prob) const {
    const Eigen::VectorXd eta = design * theta;
    double loss = 0.0;
    Eigen::VectorXd residual(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      loss += w(i) * (Softplus(eta(i)) - y(i) * eta(i));
      const double pi = Sigmoid(eta(i));
      residual(i) = w(i) * (pi - y(i));
      if (prob != nullptr) (*prob)(i) = pi;
    }
    const auto beta = theta.head(p);
    loss += 0.5 * inv_c * beta.squaredNorm();
    if (gradient != nullptr) {
      *gradient = design.transpose() * residual;
      gradient->head(p) += inv_c * beta;
      *gradient /= total_weight;
    }
    return loss / total_weight;
  }
};

Eigen::VectorXd ToVector(std::span<const double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

}  // namespace

double LogisticModel::Score(std::span<const double> row) const {
  double eta = intercept_;
  for (size_t j = 0; j < coefficients_.size(); ++j) {
    eta += coefficients_[j] * (row[j] - standardizer_.mean[j]) /
           standardizer_.scale[j];
  }
  return eta;
}

double LogisticModel::Probability(std::span<const double> row) const {
  return Sigmoid(Score(row));
}

json LogisticModel::ToJson() const {
  return {{"type", "logistic"},
          {"mean", standardizer_.mean},
          {"scale", standardizer_.scale},
          {"coefficients", coefficients_},
          {"intercept", intercept_},
          {"converged", converged_},
          {"iterations", iterations_}};
}

absl::StatusOr<LogisticModel> LogisticModel::FromJson(const json& j) {
  try {
    Standardizer s{j.at("mean").get<std::vector<double>>(),
                   j.at("scale").get<std::vector<double>>()};
    auto coef = j.at("coefficients").get<std::vector<double>>();
    if (s.mean.size() != coef.size() || s.scale.size() != coef.size()) {
      return absl::InvalidArgumentError("logistic record: size mismatch");
    }
    return LogisticModel(std::move(s), std::move(coef),
                         j.at("intercept").get<double>(),
                         j.at("converged").get<bool>(),
                         j.at("iterations").get<int64_t>());
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("logistic record: ", e.what()));
  }
}

double LogisticObjective(const FeatureMatrix& z, std::span<const double> theta,
                         double C) {
  return Problem(z, C).Evaluate(ToVector(theta), nullptr, nullptr);
}

std::vector<double> LogisticGradient(const FeatureMatrix& z,
                                     std::span<const double> theta, double C) {
  Eigen::VectorXd g;
  Problem(z, C).Evaluate(ToVector(theta), &g, nullptr);
  return {g.data(), g.data() + g.size()};
}

absl::StatusOr<LogisticModel> TrainLogistic(const FeatureMatrix& x, double C,
                                            int64_t max_iter, double tolerance) {
  if (!(C > 0.0) || !std::isfinite(C)) {
    return absl::InvalidArgumentError("C must be positive and finite");
  }
  if (max_iter < 0) return absl::InvalidArgumentError("max_iter must be >= 0");
  if (x.labels.size() != x.rows) {
    return absl::InvalidArgumentError("logistic regression needs labels");
  }
  size_t counts[2] = {0, 0};
  for (size_t i = 0; i < x.rows; ++i) {
    if (x.weight(i) > 0.0) ++counts[x.labels[i] == 1 ? 1 : 0];
  }
  if (counts[0] < 2 || counts[1] < 2) {
    return absl::FailedPreconditionError(absl::StrCat(
        "logistic regression needs >= 2 rows per class (have ", counts[0],
        " negative, ", counts[1], " positive)"));
  }

  Standardizer standardizer = Standardizer::Fit(x);
  const Problem problem(standardizer.Apply(x), C);
  const Eigen::Index dim = problem.p + 1;
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd gradient(dim);
  Eigen::VectorXd prob(problem.y.size());
  double objective = problem.Evaluate(theta, &gradient, &prob);

  bool converged = false;
  int64_t iterations = 0;
  Eigen::MatrixXd hessian(dim, dim);
  Eigen::MatrixXd scaled(problem.design.rows(), dim);
  while (true) {
    if (gradient.lpNorm<Eigen::Infinity>() <= tolerance) {
      converged = true;
      break;
    }
    if (iterations >= max_iter) break;

    for (Eigen::Index i = 0; i < scaled.rows(); ++i) {
      scaled.row(i) = problem.design.row(i) *
                      std::sqrt(problem.w(i) * prob(i) * (1.0 - prob(i)));
    }
    hessian.setZero();
    hessian.selfadjointView<Eigen::Lower>().rankUpdate(scaled.transpose());
    hessian.diagonal().head(problem.p).array() += problem.inv_c;
    hessian /= problem.total_weight;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(hessian.selfadjointView<Eigen::Lower>());
    Eigen::VectorXd step = ldlt.solve(-gradient);
    double slope = gradient.dot(step);
    if (ldlt.info() != Eigen::Success || !std::isfinite(slope) || slope >= 0.0) {
      step = -gradient;
      slope = -gradient.squaredNorm();
    }

    // Armijo backtracking; the slack absorbs rounding once at the optimum.
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() *
                         std::abs(objective);
    double t = 1.0;
    bool accepted = false;
    Eigen::VectorXd candidate(dim);
    Eigen::VectorXd candidate_gradient(dim);
    for (int halvings = 0; halvings < 60; ++halvings, t *= 0.5) {
      candidate = theta + t * step;
      const double value =
          problem.Evaluate(candidate, &candidate_gradient, &prob);
      if (std::isfinite(value) && value <= objective + 1e-4 * t * slope + slack) {
        theta = candidate;
        gradient = candidate_gradient;
        objective = value;
        accepted = true;
        break;
      }
    }
    ++iterations;
    if (!accepted) {
      problem.Evaluate(theta, &gradient, &prob);
      converged = gradient.lpNorm<Eigen::Infinity>() <= tolerance;
      break;
    }
  }

  std::vector<double> coefficients(theta.data(), theta.data() + problem.p);
  return LogisticModel(std::move(standardizer), std::move(coefficients),
                       theta(problem.p), converged, iterations);
}

}  // namespace tradeoff

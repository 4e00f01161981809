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

#include "tradeoff/fairness/exponentiated_gradient.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "tradeoff/common/random.h"
#include "tradeoff/common/status_macros.h"
#include "tradeoff/learning/grid_search.h"

namespace tradeoff {
namespace {

using json = nlohmann::json;

// Moment m compares the mean prediction over its cell with the mean over
// its conditioning event.
class Moments {
 public:
  static absl::StatusOr<Moments> Build(FairnessConstraint constraint,
                                       std::span<const int> labels,
                                       std::span<const int> groups) {
    if (labels.size() != groups.size()) {
      return absl::InvalidArgumentError("labels and groups differ in length");
    }
    Moments m;
    m.constraint_ = constraint;
    m.labels_ = labels;
    m.groups_ = groups;
    const size_t count = constraint == FairnessConstraint::kEqualizedOdds ? 4 : 2;
    m.cell_size_.assign(count, 0);
    m.event_size_.assign(count, 0);
    for (size_t i = 0; i < labels.size(); ++i) {
      for (size_t k = 0; k < count; ++k) {
        if (m.InEvent(k, i)) ++m.event_size_[k];
        if (m.InCell(k, i)) ++m.cell_size_[k];
      }
    }
    for (size_t k = 0; k < count; ++k) {
      if (m.cell_size_[k] == 0) {
        if (constraint == FairnessConstraint::kEqualizedOdds) {
          return absl::FailedPreconditionError(absl::StrCat(
              "equalized odds constraint undefined: no training rows with "
              "label=", k / 2, ", group=", k % 2));
        }
        return absl::FailedPreconditionError(
            absl::StrCat("demographic parity constraint undefined: group ", k,
                         " is empty"));
      }
    }
    return m;
  }

  size_t size() const { return cell_size_.size(); }

  bool InEvent(size_t k, size_t i) const {
    return constraint_ == FairnessConstraint::kDemographicParity ||
           labels_[i] == static_cast<int>(k / 2);
  }
  bool InCell(size_t k, size_t i) const {
    if (constraint_ == FairnessConstraint::kDemographicParity) {
      return groups_[i] == static_cast<int>(k);
    }
    return labels_[i] == static_cast<int>(k / 2) &&
           groups_[i] == static_cast<int>(k % 2);
  }

  // d gamma_k / d h_i.
  double Derivative(size_t k, size_t i) const {
    double d = 0.0;
    if (InCell(k, i)) d += 1.0 / static_cast<double>(cell_size_[k]);
    if (InEvent(k, i)) d -= 1.0 / static_cast<double>(event_size_[k]);
    return d;
  }

  std::vector<double> Gamma(std::span<const int> predicted) const {
    std::vector<double> cell(size(), 0.0), event(size(), 0.0);
    for (size_t i = 0; i < predicted.size(); ++i) {
      if (predicted[i] == 0) continue;
      for (size_t k = 0; k < size(); ++k) {
        if (InCell(k, i)) cell[k] += 1.0;
        if (InEvent(k, i)) event[k] += 1.0;
      }
    }
    std::vector<double> gamma(size());
    for (size_t k = 0; k < size(); ++k) {
      gamma[k] = cell[k] / static_cast<double>(cell_size_[k]) -
                 event[k] / static_cast<double>(event_size_[k]);
    }
    return gamma;
  }

  static double MaxViolation(const std::vector<double>& gamma) {
    double v = -std::numeric_limits<double>::infinity();
    for (double g : gamma) v = std::max(v, std::abs(g));
    return v;
  }

 private:
  FairnessConstraint constraint_ = FairnessConstraint::kEqualizedOdds;
  std::span<const int> labels_;
  std::span<const int> groups_;
  std::vector<size_t> cell_size_;
  std::vector<size_t> event_size_;
};

double ErrorRate(std::span<const int> predicted, std::span<const int> labels) {
  return 1.0 - Accuracy(predicted, labels);
}

}  // namespace

std::string_view FairnessConstraintName(FairnessConstraint c) {
  return c == FairnessConstraint::kEqualizedOdds ? "eo" : "dp";
}

absl::StatusOr<FairnessConstraint> ParseFairnessConstraint(std::string_view name) {
  if (name == "eo" || name == "equalized_odds") {
    return FairnessConstraint::kEqualizedOdds;
  }
  if (name == "dp" || name == "demographic_parity") {
    return FairnessConstraint::kDemographicParity;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown fairness constraint '", std::string(name), "' (expected eo or dp)"));
}

absl::Status EgParams::Validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError("eps must be > 0 (it sets the bound 1/eps)");
  }
  if (max_iterations < 1) return absl::InvalidArgumentError("T must be >= 1");
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    return absl::InvalidArgumentError("eta must be > 0");
  }
  return absl::OkStatus();
}

double MixtureModel::Probability(std::span<const double> row) const {
  size_t votes = 0;
  for (const auto& m : members_) votes += m->Probability(row) > 0.5 ? 1 : 0;
  return static_cast<double>(votes) / static_cast<double>(members_.size());
}

json MixtureModel::ToJson() const {
  json members = json::array();
  for (const auto& m : members_) members.push_back(m->ToJson());
  return {{"type", "mixture"}, {"members", members}};
}

absl::StatusOr<MixtureModel> MixtureModel::FromJson(const json& j) {
  if (!j.contains("members") || !j["members"].is_array() || j["members"].empty()) {
    return absl::InvalidArgumentError("mixture record lacks members");
  }
  std::vector<std::shared_ptr<const Classifier>> members;
  for (const json& m : j["members"]) {
    TRADEOFF_ASSIGN_OR_RETURN(std::shared_ptr<const Classifier> c,
                              LoadClassifier(m));
    members.push_back(std::move(c));
  }
  return MixtureModel(std::move(members));
}

absl::StatusOr<std::shared_ptr<const Classifier>> LoadClassifier(const json& j) {
  if (j.is_object() && j.value("type", "") == "mixture") {
    TRADEOFF_ASSIGN_OR_RETURN(MixtureModel m, MixtureModel::FromJson(j));
    return std::make_shared<const MixtureModel>(std::move(m));
  }
  return ClassifierFromJson(j);
}

absl::StatusOr<double> MaxConstraintViolation(FairnessConstraint constraint,
                                              std::span<const int> predicted,
                                              std::span<const int> labels,
                                              std::span<const int> groups) {
  if (predicted.size() != labels.size()) {
    return absl::InvalidArgumentError("predictions and labels differ in length");
  }
  TRADEOFF_ASSIGN_OR_RETURN(Moments moments,
                            Moments::Build(constraint, labels, groups));
  return Moments::MaxViolation(moments.Gamma(predicted));
}

absl::StatusOr<EgResult> ExponentiatedGradient(const FeatureMatrix& train,
                                               std::span<const int> groups,
                                               const EgParams& params) {
  TRADEOFF_RETURN_IF_ERROR(params.Validate());
  if (train.rows == 0 || train.labels.size() != train.rows) {
    return absl::InvalidArgumentError("exponentiated gradient needs labeled rows");
  }
  if (groups.size() != train.rows) {
    return absl::InvalidArgumentError("group vector length differs from rows");
  }
  const std::span<const int> labels = train.labels;
  TRADEOFF_ASSIGN_OR_RETURN(Moments moments,
                            Moments::Build(params.constraint, labels, groups));

  const size_t n = train.rows;
  const size_t num_constraints = 2 * moments.size();
  const double bound = 1.0 / params.eps;
  std::vector<double> theta(num_constraints, 0.0);
  std::vector<std::shared_ptr<const Classifier>> members;
  std::vector<int> votes(n, 0);
  std::vector<int> relabeled(n);
  std::vector<double> weights(n);
  std::vector<double> cost(n);
  std::vector<int> mixture(n);

  EgResult result;
  double best_objective = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= params.max_iterations; ++t) {
    EgRound round;
    // lambda_j = B exp(theta_j) / (1 + sum exp(theta)), computed stably.
    double shift = 0.0;
    for (double v : theta) shift = std::max(shift, v);
    double denom = std::exp(-shift);
    for (double v : theta) denom += std::exp(v - shift);
    round.lambda.resize(num_constraints);
    for (size_t j = 0; j < num_constraints; ++j) {
      round.lambda[j] = bound * std::exp(theta[j] - shift) / denom;
    }

    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double c = (1.0 - 2.0 * labels[i]) / static_cast<double>(n);
      for (size_t k = 0; k < moments.size(); ++k) {
        const double net = round.lambda[2 * k] - round.lambda[2 * k + 1];
        if (net != 0.0) c += net * moments.Derivative(k, i);
      }
      cost[i] = c;
      total += std::abs(c);
    }
    size_t weighted_rows[2] = {0, 0};
    double class_weight[2] = {0.0, 0.0};
    for (size_t i = 0; i < n; ++i) {
      relabeled[i] = cost[i] < 0.0 ? 1 : 0;
      weights[i] = total > 0.0 ? static_cast<double>(n) * std::abs(cost[i]) / total
                               : 0.0;
      if (weights[i] > 0.0) {
        ++weighted_rows[relabeled[i]];
        class_weight[relabeled[i]] += weights[i];
      }
    }

    std::shared_ptr<const Classifier> member;
    if (weighted_rows[0] < 2 || weighted_rows[1] < 2) {
      member = std::make_shared<const ConstantClassifier>(
          class_weight[1] > class_weight[0] ? 1.0 : 0.0);
    } else {
      TRADEOFF_ASSIGN_OR_RETURN(
          FittedModel fitted,
          TrainLearner(train.WithLabels(relabeled).WithWeights(weights),
                       params.base, params.base_params,
                       DeriveSeed(params.seed, static_cast<uint64_t>(t))));
      member = fitted.classifier;
    }
    members.push_back(member);

    const std::vector<int> predicted = PredictLabels(*member, train);
    const std::vector<double> gamma = moments.Gamma(predicted);
    round.member_violation = Moments::MaxViolation(gamma);
    for (size_t i = 0; i < n; ++i) {
      votes[i] += predicted[i];
      mixture[i] = 2 * votes[i] > t ? 1 : 0;
    }
    round.mixture_error = ErrorRate(mixture, labels);
    round.mixture_violation = Moments::MaxViolation(moments.Gamma(mixture));
    round.objective = round.mixture_error +
                      bound * std::max(0.0, round.mixture_violation - params.eps);
    round.best_violation =
        result.rounds.empty()
            ? round.mixture_violation
            : std::min(result.rounds.back().best_violation, round.mixture_violation);
    if (round.objective < best_objective) {
      best_objective = round.objective;
      result.best_prefix = static_cast<size_t>(t);
      result.max_violation = round.mixture_violation;
    }
    result.rounds.push_back(std::move(round));

    if (t == 1 && result.rounds[0].member_violation <= params.eps) break;

    const double step = params.eta / bound;
    for (size_t k = 0; k < moments.size(); ++k) {
      theta[2 * k] += step * (gamma[k] - params.eps);
      theta[2 * k + 1] += step * (-gamma[k] - params.eps);
    }
  }

  members.resize(result.best_prefix);
  result.model = std::make_shared<const MixtureModel>(std::move(members));
  if (result.max_violation > params.eps) {
    result.flags.push_back("constraint_violated");
  }
  return result;
}

}  // namespace tradeoff

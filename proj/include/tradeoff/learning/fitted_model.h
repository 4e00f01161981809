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

#ifndef TRADEOFF_LEARNING_FITTED_MODEL_H_
#define TRADEOFF_LEARNING_FITTED_MODEL_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "tradeoff/learning/feature_matrix.h"

namespace tradeoff {

enum class LearnerKind { kLogistic, kRandomForest, kBoosting };

// Short names used on the command line and in records: logit, rf, xgb.
std::string_view LearnerKindName(LearnerKind kind);
absl::StatusOr<LearnerKind> ParseLearnerKind(std::string_view name);
// Display names used in result tables: Logit, RF, XGB.
std::string_view LearnerDisplayName(LearnerKind kind);

struct HyperParams {
  int n_estimators = 0;
  int max_depth = 0;
  double learning_rate = 0.0;
  double C = 0.0;
  int64_t max_iter = 0;

  nlohmann::json ToJson(LearnerKind kind) const;
  static absl::StatusOr<HyperParams> FromJson(LearnerKind kind,
                                              const nlohmann::json& j);
  // Compact "key=value;..." form for result tables.
  std::string ToString(LearnerKind kind) const;

  friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

// A trained binary classifier over encoded rows. Implementations are
// immutable after construction, so prediction is a pure function.
class Classifier {
 public:
  virtual ~Classifier() = default;

  // Probability of the positive class.
  virtual double Probability(std::span<const double> row) const = 0;
  // Real-valued decision score; defaults to the log-odds of Probability().
  virtual double Score(std::span<const double> row) const;
  virtual nlohmann::json ToJson() const = 0;
};

// Always predicts the same probability.
class ConstantClassifier : public Classifier {
 public:
  explicit ConstantClassifier(double probability) : probability_(probability) {}

  double Probability(std::span<const double>) const override {
    return probability_;
  }
  nlohmann::json ToJson() const override;

 private:
  double probability_;
};

std::vector<double> PredictProbabilities(const Classifier& model,
                                         const FeatureMatrix& x);
// Label 1 iff probability > 0.5.
std::vector<int> PredictLabels(const Classifier& model, const FeatureMatrix& x);
double Accuracy(std::span<const int> predicted, std::span<const int> truth);

// Rebuilds a logistic, forest, boosting or constant classifier from its
// ToJson() form.
absl::StatusOr<std::shared_ptr<const Classifier>> ClassifierFromJson(
    const nlohmann::json& j);

using ClassifierLoader =
    std::function<absl::StatusOr<std::shared_ptr<const Classifier>>(
        const nlohmann::json&)>;

struct FittedModel {
  LearnerKind kind = LearnerKind::kLogistic;
  HyperParams params;
  std::shared_ptr<const Classifier> classifier;
  double cv_score = std::numeric_limits<double>::quiet_NaN();
  uint64_t seed = 0;
  std::vector<std::string> flags;

  std::vector<double> Probabilities(const FeatureMatrix& x) const {
    return PredictProbabilities(*classifier, x);
  }
  std::vector<int> Predict(const FeatureMatrix& x) const {
    return PredictLabels(*classifier, x);
  }

  nlohmann::json ToJson() const;
  // `loader` reads the "model" field; ClassifierFromJson when empty.
  static absl::StatusOr<FittedModel> FromJson(
      const nlohmann::json& j, const ClassifierLoader& loader = nullptr);
};

}  // namespace tradeoff

#endif  // TRADEOFF_LEARNING_FITTED_MODEL_H_

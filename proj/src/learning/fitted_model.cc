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

#include "tradeoff/learning/fitted_model.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "tradeoff/common/csv.h"
#include "tradeoff/learning/boosting.h"
#include "tradeoff/learning/logistic.h"
#include "tradeoff/learning/random_forest.h"

namespace tradeoff {

using json = nlohmann::json;

std::string_view LearnerKindName(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kLogistic:
      return "logit";
    case LearnerKind::kRandomForest:
      return "rf";
    case LearnerKind::kBoosting:
      return "xgb";
  }
  return "unknown";
}

std::string_view LearnerDisplayName(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kLogistic:
      return "Logit";
    case LearnerKind::kRandomForest:
      return "RF";
    case LearnerKind::kBoosting:
      return "XGB";
  }
  return "unknown";
}

absl::StatusOr<LearnerKind> ParseLearnerKind(std::string_view name) {
  for (LearnerKind kind : {LearnerKind::kLogistic, LearnerKind::kRandomForest,
                           LearnerKind::kBoosting}) {
    if (name == LearnerKindName(kind) || name == LearnerDisplayName(kind)) {
      return kind;
    }
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown learner '", std::string(name), "' (expected logit, rf or xgb)"));
}

json HyperParams::ToJson(LearnerKind kind) const {
  switch (kind) {
    case LearnerKind::kLogistic:
      return {{"C", C}, {"max_iter", max_iter}};
    case LearnerKind::kRandomForest:
      return {{"n_estimators", n_estimators}, {"max_depth", max_depth}};
    case LearnerKind::kBoosting:
      return {{"n_estimators", n_estimators},
              {"max_depth", max_depth},
              {"learning_rate", learning_rate}};
  }
  return json::object();
}

absl::StatusOr<HyperParams> HyperParams::FromJson(LearnerKind kind,
                                                  const json& j) {
  HyperParams p;
  try {
    if (kind == LearnerKind::kLogistic) {
      p.C = j.at("C").get<double>();
      p.max_iter = j.at("max_iter").get<int64_t>();
    } else {
      p.n_estimators = j.at("n_estimators").get<int>();
      p.max_depth = j.at("max_depth").get<int>();
      if (kind == LearnerKind::kBoosting) {
        p.learning_rate = j.at("learning_rate").get<double>();
      }
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("hyper-parameters: ", e.what()));
  }
  return p;
}

std::string HyperParams::ToString(LearnerKind kind) const {
  switch (kind) {
    case LearnerKind::kLogistic:
      return absl::StrCat("C=", FormatNumber(C), ";max_iter=", max_iter);
    case LearnerKind::kRandomForest:
      return absl::StrCat("n_estimators=", n_estimators,
                          ";max_depth=", max_depth);
    case LearnerKind::kBoosting:
      return absl::StrCat("n_estimators=", n_estimators, ";max_depth=",
                          max_depth, ";learning_rate=",
                          FormatNumber(learning_rate));
  }
  return "";
}

double Classifier::Score(std::span<const double> row) const {
  const double p = std::clamp(Probability(row), 1e-15, 1.0 - 1e-15);
  return std::log(p / (1.0 - p));
}

json ConstantClassifier::ToJson() const {
  return {{"type", "constant"}, {"probability", probability_}};
}

std::vector<double> PredictProbabilities(const Classifier& model,
                                         const FeatureMatrix& x) {
  std::vector<double> out(x.rows);
  for (size_t i = 0; i < x.rows; ++i) out[i] = model.Probability(x.row(i));
  return out;
}

std::vector<int> PredictLabels(const Classifier& model, const FeatureMatrix& x) {
  std::vector<int> out(x.rows);
  for (size_t i = 0; i < x.rows; ++i) {
    out[i] = model.Probability(x.row(i)) > 0.5 ? 1 : 0;
  }
  return out;
}

double Accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (truth.empty()) return 0.0;
  size_t correct = 0;
  for (size_t i = 0; i < truth.size(); ++i) correct += predicted[i] == truth[i];
  return static_cast<double>(correct) / static_cast<double>(truth.size());
}

absl::StatusOr<std::shared_ptr<const Classifier>> ClassifierFromJson(
    const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    return absl::InvalidArgumentError("classifier record lacks a type");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "logistic") {
    absl::StatusOr<LogisticModel> m = LogisticModel::FromJson(j);
    if (!m.ok()) return m.status();
    return std::make_shared<const LogisticModel>(*std::move(m));
  }
  if (type == "forest") {
    absl::StatusOr<RandomForestModel> m = RandomForestModel::FromJson(j);
    if (!m.ok()) return m.status();
    return std::make_shared<const RandomForestModel>(*std::move(m));
  }
  if (type == "boosting") {
    absl::StatusOr<BoostingModel> m = BoostingModel::FromJson(j);
    if (!m.ok()) return m.status();
    return std::make_shared<const BoostingModel>(*std::move(m));
  }
  if (type == "constant") {
    if (!j.contains("probability") || !j["probability"].is_number()) {
      return absl::InvalidArgumentError("constant record lacks a probability");
    }
    return std::make_shared<const ConstantClassifier>(
        j["probability"].get<double>());
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown classifier type '", type, "'"));
}

json FittedModel::ToJson() const {
  return {{"learner", std::string(LearnerKindName(kind))},
          {"params", params.ToJson(kind)},
          {"cv_score", std::isfinite(cv_score) ? json(cv_score) : json(nullptr)},
          {"seed", seed},
          {"flags", flags},
          {"model", classifier->ToJson()}};
}

absl::StatusOr<FittedModel> FittedModel::FromJson(const json& j,
                                                  const ClassifierLoader& loader) {
  FittedModel m;
  try {
    absl::StatusOr<LearnerKind> kind =
        ParseLearnerKind(j.at("learner").get<std::string>());
    if (!kind.ok()) return kind.status();
    m.kind = *kind;
    absl::StatusOr<HyperParams> params = HyperParams::FromJson(m.kind, j.at("params"));
    if (!params.ok()) return params.status();
    m.params = *params;
    if (!j.at("cv_score").is_null()) m.cv_score = j["cv_score"].get<double>();
    m.seed = j.at("seed").get<uint64_t>();
    m.flags = j.at("flags").get<std::vector<std::string>>();
    absl::StatusOr<std::shared_ptr<const Classifier>> c =
        loader ? loader(j.at("model")) : ClassifierFromJson(j.at("model"));
    if (!c.ok()) return c.status();
    m.classifier = *std::move(c);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("model record: ", e.what()));
  }
  return m;
}

}  // namespace tradeoff

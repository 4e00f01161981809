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


#include "tradeoff/harness/experiment_config.h"

#include <filesystem>

#include "absl/strings/str_cat.h"
#include "tradeoff/common/csv.h"
#include "tradeoff/common/digest.h"
#include "tradeoff/common/status_macros.h"

namespace tradeoff {
namespace {

using json = nlohmann::json;

std::string Resolve(const std::string& path, const std::string& base_dir) {
  std::filesystem::path p = path;
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return p.lexically_normal().string();
}

absl::Status ParseSynthesis(const json& j, const std::string& base_dir,
                            SynthesisConfig& s) {
  if (j.contains("privatesmote")) {
    const json& p = j["privatesmote"];
    if (p.is_string()) {
      TRADEOFF_RETURN_IF_ERROR(ApplyNamedGrid(p.get<std::string>(), s));
    } else if (p.is_boolean()) {
      s.privatesmote = p.get<bool>();
    } else if (p.is_object()) {
      if (p.contains("ratio")) s.ratios = p["ratio"].get<std::vector<int>>();
      if (p.contains("knn")) s.knns = p["knn"].get<std::vector<int>>();
      if (p.contains("eps")) s.epsilons = p["eps"].get<std::vector<double>>();
    } else {
      return absl::InvalidArgumentError(
          "synthesis.privatesmote must be \"full\", \"single\", false or an "
          "object of parameter lists");
    }
    if (s.privatesmote &&
        (s.ratios.empty() || s.knns.empty() || s.epsilons.empty())) {
      return absl::InvalidArgumentError("PrivateSMOTE parameter lists are empty");
    }
  }
  if (j.contains("imported_dir")) {
    s.imported_dir = Resolve(j["imported_dir"].get<std::string>(), base_dir);
  }
  s.include_original = j.value("include_original", s.include_original);
  s.save_variants = j.value("save_variants", s.save_variants);
  return absl::OkStatus();
}

absl::StatusOr<HyperGrid> ParseLearner(const json& j) {
  if (j.is_string()) {
    TRADEOFF_ASSIGN_OR_RETURN(LearnerKind kind,
                              ParseLearnerKind(j.get<std::string>()));
    return HyperGrid::Default(kind);
  }
  if (!j.is_object() || !j.contains("kind")) {
    return absl::InvalidArgumentError(
        "a learner is a name or an object with a \"kind\"");
  }
  TRADEOFF_ASSIGN_OR_RETURN(LearnerKind kind,
                            ParseLearnerKind(j["kind"].get<std::string>()));
  if (!j.contains("grid")) return HyperGrid::Default(kind);
  return HyperGrid::FromJson(kind, j["grid"]);
}

absl::Status ParseFairness(const json& j, ExperimentConfig& c) {
  if (j.contains("methods")) {
    c.fairness_methods.clear();
    bool none = false, eg = false;
    for (const json& m : j["methods"]) {
      const std::string name = m.get<std::string>();
      if (name == kNoFairnessMethod) {
        none = true;
      } else if (name == "eg" || name == kEgMethod) {
        eg = true;
      } else {
        return absl::InvalidArgumentError(absl::StrCat(
            "unknown fairness method '", name, "' (expected none or eg)"));
      }
    }
    if (none) c.fairness_methods.push_back(kNoFairnessMethod);
    if (eg) c.fairness_methods.push_back(kEgMethod);
    if (c.fairness_methods.empty()) {
      return absl::InvalidArgumentError("fairness.methods is empty");
    }
  }
  if (j.contains("constraint")) {
    TRADEOFF_ASSIGN_OR_RETURN(
        c.eg.constraint,
        ParseFairnessConstraint(j["constraint"].get<std::string>()));
  }
  c.eg.eps = j.value("eps", c.eg.eps);
  c.eg.max_iterations = j.value("max_iterations", c.eg.max_iterations);
  c.eg.eta = j.value("eta", c.eg.eta);
  return c.eg.Validate();
}

absl::Status ParseAnalysis(const json& j, ExperimentConfig& c) {
  if (j.contains("rope")) {
    const std::vector<double> rope = j["rope"].get<std::vector<double>>();
    if (rope.size() != 2 || !(rope[0] < rope[1])) {
      return absl::InvalidArgumentError("analysis.rope must be [low, high]");
    }
    c.bayes.rope_low = rope[0];
    c.bayes.rope_high = rope[1];
  }
  c.bayes.prior_strength = j.value("prior_strength", c.bayes.prior_strength);
  c.bayes.mc_samples = j.value("mc_samples", c.bayes.mc_samples);
  c.path_rope = j.value("path_rope", c.path_rope);
  if (!(c.bayes.prior_strength > 0.0) || c.bayes.mc_samples < 1 ||
      !(c.path_rope >= 0.0)) {
    return absl::InvalidArgumentError(
        "analysis needs prior_strength > 0, mc_samples >= 1, path_rope >= 0");
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status ApplyNamedGrid(std::string_view name, SynthesisConfig& synthesis) {
  SynthesisConfig defaults;
  if (name == "full") {
    synthesis.ratios = defaults.ratios;
    synthesis.knns = defaults.knns;
    synthesis.epsilons = defaults.epsilons;
  } else if (name == "single") {
    synthesis.ratios = {defaults.ratios.front()};
    synthesis.knns = {defaults.knns.front()};
    synthesis.epsilons = {defaults.epsilons.front()};
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown grid '", std::string(name), "' (expected full or single)"));
  }
  synthesis.privatesmote = true;
  return absl::OkStatus();
}

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(
    const json& j, const std::string& base_dir) {
  ExperimentConfig c;
  try {
    if (!j.is_object() || !j.contains("dataset") || !j.contains("seed")) {
      return absl::InvalidArgumentError(
          "experiment config needs 'dataset' and 'seed'");
    }
    c.dataset_config_path = Resolve(j["dataset"].get<std::string>(), base_dir);
    c.seed = j["seed"].get<uint64_t>();
    if (j.contains("synthesis")) {
      TRADEOFF_RETURN_IF_ERROR(ParseSynthesis(j["synthesis"], base_dir, c.synthesis));
    }
    if (j.contains("learners")) {
      for (const json& l : j["learners"]) {
        TRADEOFF_ASSIGN_OR_RETURN(HyperGrid grid, ParseLearner(l));
        c.learners.push_back(std::move(grid));
      }
    } else {
      c.learners = {HyperGrid::Default(LearnerKind::kLogistic),
                    HyperGrid::Default(LearnerKind::kRandomForest),
                    HyperGrid::Default(LearnerKind::kBoosting)};
    }
    if (c.learners.empty()) {
      return absl::InvalidArgumentError("experiment config lists no learners");
    }
    if (j.contains("cv")) {
      c.cv.folds = j["cv"].value("folds", c.cv.folds);
      c.cv.repetitions = j["cv"].value("repetitions", c.cv.repetitions);
      if (c.cv.folds < 2 || c.cv.repetitions < 1) {
        return absl::InvalidArgumentError("cv needs folds >= 2, repetitions >= 1");
      }
    }
    if (j.contains("fairness")) {
      TRADEOFF_RETURN_IF_ERROR(ParseFairness(j["fairness"], c));
    }
    if (j.contains("analysis")) {
      TRADEOFF_RETURN_IF_ERROR(ParseAnalysis(j["analysis"], c));
    }
    c.save_models = j.value("save_models", c.save_models);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("experiment config: ", e.what()));
  }
  if (!c.synthesis.privatesmote && c.synthesis.imported_dir.empty() &&
      !c.synthesis.include_original) {
    return absl::InvalidArgumentError("experiment config has no variant source");
  }

  TRADEOFF_ASSIGN_OR_RETURN(std::string dataset_text,
                            ReadTextFile(c.dataset_config_path));
  TRADEOFF_ASSIGN_OR_RETURN(
      c.dataset,
      ParseDatasetConfig(dataset_text, std::filesystem::path(c.dataset_config_path)
                                           .parent_path()
                                           .string()));
  if (c.dataset.fairness_attribute.empty()) {
    return absl::InvalidArgumentError(
        "dataset config names no fairness_attribute");
  }
  json canonical = j;
  canonical.erase("out");
  canonical.erase("workers");
  c.digest = HexDigest(
      Fnv1a64(absl::StrCat(canonical.dump(), "\n", dataset_text)));
  return c;
}

absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path) {
  TRADEOFF_ASSIGN_OR_RETURN(std::string text, ReadTextFile(path));
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("experiment config ", path, ": ", e.what()));
  }
  return ParseExperimentConfig(
      j, std::filesystem::path(path).parent_path().string());
}

}  // namespace tradeoff

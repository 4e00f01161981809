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


// Experiment configuration: one structured-text file naming the dataset
// config, the variant sources, the learners with their grids, the fairness
// methods and the analysis settings.
//
//   {
//     "dataset": "adult.json",            relative to this file
//     "seed": 42,
//     "synthesis": {
//       "privatesmote": "full" | "single" | {"ratio": [..], "knn": [..],
//                                            "eps": [..]},
//       "imported_dir": "gan_variants",    optional
//       "include_original": false,         the unprotected training set
//       "save_variants": true
//     },
//     "learners": ["logit", {"kind": "rf", "grid": {"max_depth": [4]}}],
//     "cv": {"folds": 5, "repetitions": 2},
//     "fairness": {"methods": ["none", "eg"], "constraint": "eo",
//                  "eps": 0.01, "max_iterations": 50, "eta": 2.0},
//     "analysis": {"rope": [-1, 1], "prior_strength": 1,
//                  "mc_samples": 30000, "path_rope": 0},
//     "save_models": false
//   }
//
// Only "dataset" and "seed" are required.

#ifndef TRADEOFF_HARNESS_EXPERIMENT_CONFIG_H_
#define TRADEOFF_HARNESS_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "tradeoff/analysis/bayes_sign_test.h"
#include "tradeoff/analysis/solution_record.h"
#include "tradeoff/data/dataset.h"
#include "tradeoff/fairness/exponentiated_gradient.h"
#include "tradeoff/learning/grid_search.h"
#include "tradeoff/privacy/private_smote.h"

namespace tradeoff {

inline constexpr char kEgMethod[] = "EG";

struct SynthesisConfig {
  std::vector<int> ratios = {1, 2, 3};
  std::vector<int> knns = {1, 3, 5};
  std::vector<double> epsilons = {0.1, 0.3, 0.5};
  bool privatesmote = true;
  std::string imported_dir;  // resolved; empty for none
  bool include_original = false;
  bool save_variants = true;
};

struct ExperimentConfig {
  std::string dataset_config_path;  // resolved
  DatasetConfig dataset;
  uint64_t seed = 0;
  SynthesisConfig synthesis;
  std::vector<HyperGrid> learners;
  CvOptions cv;
  // kNoFairnessMethod and/or kEgMethod, in that order.
  std::vector<std::string> fairness_methods = {kNoFairnessMethod};
  EgParams eg;  // base, base_params and seed are set per cell
  BayesOptions bayes;
  double path_rope = 0.0;
  bool save_models = false;
  // FNV-1a over the canonical config text (output settings removed) and the
  // dataset config text.
  std::string digest;
};

// PrivateSMOTE parameter lists for the named grid: "full" is the 3 x 3 x 3
// product, "single" takes the first value of each list.
absl::Status ApplyNamedGrid(std::string_view name, SynthesisConfig& synthesis);

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(
    const nlohmann::json& j, const std::string& base_dir);
absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path);

}  // namespace tradeoff

#endif  // TRADEOFF_HARNESS_EXPERIMENT_CONFIG_H_

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


// End-to-end sweep: split, synthesize the variants, score their linkage
// risk, train every (variant, learner, fairness method) cell, evaluate on
// the untouched test split and collect the results table.
//
// Output directory layout:
//   ledger.jsonl          one line per finished cell attempt
//   cells/<cell>.json     per-cell record (seeds, parameters, metrics)
//   variants/<id>.csv     variant rows plus provenance sidecar
//   models/<cell>.json    model records when save_models is set
//   results.csv           sorted results table
//   results.csv.digest    FNV-1a of results.csv
//   reports/              analysis outputs (see report.h)
//
// A cell whose latest ledger entry is "done" under the same config digest,
// and whose cell file exists, is not retrained. Seeds:
//   split      DeriveSeed(seed, "split")
//   variants   PrivateSmoteGrid(..., DeriveSeed(seed, "synthesis"))
//   learner    DeriveSeed(seed, "cell/<variant>/<learner>")
//   EG         DeriveSeed(learner seed, "eg")

#ifndef TRADEOFF_HARNESS_EXPERIMENT_H_
#define TRADEOFF_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "tradeoff/analysis/solution_record.h"
#include "tradeoff/data/dataset.h"
#include "tradeoff/data/split.h"
#include "tradeoff/fairness/metrics.h"
#include "tradeoff/harness/experiment_config.h"
#include "tradeoff/learning/feature_matrix.h"
#include "tradeoff/learning/fitted_model.h"
#include "tradeoff/privacy/linkage.h"
#include "tradeoff/privacy/variant.h"

namespace tradeoff {

inline constexpr char kWorkersEnvVar[] = "TRADEOFF_WORKERS";

// Loaded, binarized and split data shared by every cell.
struct PreparedData {
  DatasetConfig config;
  Dataset data;
  Split split;
  uint64_t test_digest = 0;
};

absl::StatusOr<PreparedData> PrepareData(const DatasetConfig& config,
                                         uint64_t seed);

// The training set itself as a fully synthetic variant; its linkage risk is
// 1 whenever there are single-outs.
SyntheticVariant OriginalVariant(const Dataset& train);

// "ratio=1;knn=3;eps=0.5" for PrivateSMOTE, otherwise the provenance
// parameters as sorted key=value pairs.
std::string VariantParamsText(const SyntheticVariant& variant);

struct SolutionMeta {
  std::string dataset;
  const SyntheticVariant* variant = nullptr;
  LearnerKind learner = LearnerKind::kLogistic;
  std::string fairness_method = kNoFairnessMethod;
};

struct Evaluation {
  SolutionRecord record;
  std::optional<FairnessReport> fairness;  // unset when undefined on test
  std::string fairness_error;
};

// Accuracy and equalized odds of `model` on the test matrix, paired with
// the variant's linkage risk.
absl::StatusOr<Evaluation> EvaluateSolution(const Classifier& model,
                                            const FeatureMatrix& test,
                                            std::span<const int> test_groups,
                                            const SolutionMeta& meta,
                                            const LinkageRisk& risk);

// Model record: the fitted model plus the encoder that produced its
// features, so it can score raw data files.
struct ModelRecord {
  FeatureEncoder encoder;
  FittedModel model;
  std::string fairness_method = kNoFairnessMethod;
  std::string protected_attribute;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json ToJson() const;
  static absl::StatusOr<ModelRecord> FromJson(const nlohmann::json& j);
};

// Trains one cell's model on an encoded variant: grid search for the
// agnostic learner, and exponentiated gradient over the learner with the
// grid-selected parameters for kEgMethod.
absl::StatusOr<FittedModel> TrainCell(const ExperimentConfig& config,
                                      const FeatureMatrix& train,
                                      std::span<const int> train_groups,
                                      const HyperGrid& grid,
                                      std::string_view fairness_method,
                                      uint64_t seed);

std::string CellId(std::string_view variant_id, LearnerKind learner,
                   std::string_view fairness_method);

struct RunOptions {
  std::string out_dir;
  int workers = 1;
  std::function<void(std::string_view)> log;  // progress lines; may be empty
};

struct RunSummary {
  size_t cells = 0;
  size_t trained = 0;  // cells fitted in this invocation
  size_t skipped = 0;  // cells already done
  size_t failed = 0;
  std::vector<SolutionRecord> records;
  std::string results_digest;
  std::string test_digest;
};

// Worker count: the flag when given, else the environment variable, else
// the number of logical cores.
int ResolveWorkers(std::optional<int> flag);

absl::StatusOr<RunSummary> RunExperiment(const ExperimentConfig& config,
                                         const RunOptions& options);

}  // namespace tradeoff

#endif  // TRADEOFF_HARNESS_EXPERIMENT_H_

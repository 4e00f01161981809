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


// Command-line front end: one verb per step of the benchmark workflow.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "json.hpp"
#include "tradeoff/analysis/analysis.h"
#include "tradeoff/analysis/bayes_sign_test.h"
#include "tradeoff/analysis/solution_record.h"
#include "tradeoff/common/csv.h"
#include "tradeoff/common/digest.h"
#include "tradeoff/common/random.h"
#include "tradeoff/common/status_macros.h"
#include "tradeoff/fairness/metrics.h"
#include "tradeoff/harness/experiment.h"
#include "tradeoff/harness/experiment_config.h"
#include "tradeoff/harness/report.h"
#include "tradeoff/privacy/linkage.h"
#include "tradeoff/privacy/private_smote.h"

namespace tradeoff {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

absl::Status Emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return absl::OkStatus();
  }
  return WriteTextFile(out, text);
}

void Log(std::string_view line) {
  std::cerr << line << std::endl;
}

// Reads `file` with the column kinds of the configured dataset, then
// binarizes protected attributes unless the column is already 0/1 coded, as
// it is in files written by this tool.
absl::StatusOr<Dataset> LoadForScoring(const std::string& file,
                                       const DatasetConfig& config) {
  TRADEOFF_ASSIGN_OR_RETURN(Dataset schema, LoadDataset(config.path, config));
  TRADEOFF_ASSIGN_OR_RETURN(Dataset data, LoadDatasetLike(file, schema));
  for (const ProtectedBinarization& rule : config.protected_attributes) {
    TRADEOFF_ASSIGN_OR_RETURN(size_t c, data.ColumnIndex(rule.attribute));
    const Column& column = data.column(c);
    bool coded = !column.is_numeric();
    for (size_t r = 0; coded && r < column.labels.size(); ++r) {
      coded = column.labels[r] == "0" || column.labels[r] == "1";
    }
    if (!coded) {
      TRADEOFF_ASSIGN_OR_RETURN(data, BinarizeProtected(data, rule));
    }
  }
  return data;
}

absl::StatusOr<SyntheticVariant> LoadVariantArg(const PreparedData& prepared,
                                                const std::string& arg) {
  if (arg == "original") return OriginalVariant(prepared.split.train);
  return ReadVariant(prepared.split.train, prepared.config.quasi_identifiers, arg);
}

struct SynthesizeArgs {
  std::string dataset;
  std::string method = "privatesmote";
  std::string grid = "full";
  uint64_t seed = 0;
  std::string out;
};

absl::Status Synthesize(const SynthesizeArgs& a) {
  if (a.method != "privatesmote") {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown method '", a.method,
        "'; only privatesmote is built in (import other variants with run)"));
  }
  TRADEOFF_ASSIGN_OR_RETURN(DatasetConfig config, LoadDatasetConfig(a.dataset));
  TRADEOFF_ASSIGN_OR_RETURN(PreparedData prepared, PrepareData(config, a.seed));
  SynthesisConfig grid;
  TRADEOFF_RETURN_IF_ERROR(ApplyNamedGrid(a.grid, grid));
  fs::create_directories(fs::path(a.out) / "split");
  TRADEOFF_RETURN_IF_ERROR(WriteDatasetCsv(
      prepared.split.train, (fs::path(a.out) / "split" / "train.csv").string()));
  TRADEOFF_RETURN_IF_ERROR(WriteDatasetCsv(
      prepared.split.test, (fs::path(a.out) / "split" / "test.csv").string()));
  for (const PrivateSmoteParams& p :
       PrivateSmoteGrid(grid.ratios, grid.knns, grid.epsilons,
                        DeriveSeed(a.seed, "synthesis"))) {
    TRADEOFF_ASSIGN_OR_RETURN(
        SyntheticVariant v,
        PrivateSmote(prepared.split.train, config.quasi_identifiers, p));
    TRADEOFF_RETURN_IF_ERROR(WriteVariant(v, a.out));
    TRADEOFF_ASSIGN_OR_RETURN(
        LinkageRisk risk,
        ComputeLinkageRisk(prepared.split.train, v, config.quasi_identifiers));
    std::cout << v.id << " rows=" << v.data.num_rows()
              << " synthetic=" << v.num_synthetic()
              << " risk=" << FormatNumber(risk.at_risk_fraction) << "\n";
  }
  return absl::OkStatus();
}

absl::Status Risk(const std::string& original, const std::string& variant_arg,
                  uint64_t seed) {
  TRADEOFF_ASSIGN_OR_RETURN(DatasetConfig config, LoadDatasetConfig(original));
  TRADEOFF_ASSIGN_OR_RETURN(PreparedData prepared, PrepareData(config, seed));
  TRADEOFF_ASSIGN_OR_RETURN(SyntheticVariant v, LoadVariantArg(prepared, variant_arg));
  TRADEOFF_ASSIGN_OR_RETURN(
      LinkageRisk risk,
      ComputeLinkageRisk(prepared.split.train, v, config.quasi_identifiers));
  const json out = {{"variant_id", v.id},
                    {"single_outs", risk.single_outs},
                    {"matches", risk.matches},
                    {"linkage_risk", risk.at_risk_fraction}};
  std::cout << out.dump(2) << "\n";
  return absl::OkStatus();
}

struct TrainArgs {
  std::string config;   // experiment config, optional
  std::string dataset;  // dataset config when no experiment config
  std::string variant = "original";
  std::string algo = "logit";
  std::string fairness = kNoFairnessMethod;
  std::string constraint = "eo";
  double eps = 0.01;
  std::optional<uint64_t> seed;
  std::string out;
};

absl::Status Train(const TrainArgs& a) {
  ExperimentConfig config;
  if (!a.config.empty()) {
    TRADEOFF_ASSIGN_OR_RETURN(config, LoadExperimentConfig(a.config));
  } else if (!a.dataset.empty()) {
    TRADEOFF_ASSIGN_OR_RETURN(config.dataset, LoadDatasetConfig(a.dataset));
  } else {
    return absl::InvalidArgumentError("train needs --config or --dataset");
  }
  if (a.seed) config.seed = *a.seed;
  TRADEOFF_ASSIGN_OR_RETURN(LearnerKind kind, ParseLearnerKind(a.algo));
  HyperGrid grid = HyperGrid::Default(kind);
  for (const HyperGrid& g : config.learners) {
    if (g.kind == kind) grid = g;
  }
  std::string method = a.fairness;
  if (method == "eg") method = kEgMethod;
  if (method == kEgMethod) {
    TRADEOFF_ASSIGN_OR_RETURN(config.eg.constraint,
                              ParseFairnessConstraint(a.constraint));
    config.eg.eps = a.eps;
  } else if (method != kNoFairnessMethod) {
    return absl::InvalidArgumentError("--fairness must be none or eg");
  }

  TRADEOFF_ASSIGN_OR_RETURN(PreparedData prepared,
                            PrepareData(config.dataset, config.seed));
  TRADEOFF_ASSIGN_OR_RETURN(SyntheticVariant v, LoadVariantArg(prepared, a.variant));
  TRADEOFF_ASSIGN_OR_RETURN(
      EncodedSplit encoded,
      Encode(v.data, prepared.split.test, config.dataset.fairness_attribute));
  const uint64_t seed = DeriveSeed(
      config.seed,
      absl::StrCat("cell/", v.id, "/", std::string(LearnerKindName(kind))));
  TRADEOFF_ASSIGN_OR_RETURN(
      FittedModel model,
      TrainCell(config, encoded.train, encoded.train_groups, grid, method, seed));
  ModelRecord record{encoded.encoder, model, method,
                     config.dataset.fairness_attribute,
                     {{"variant_id", v.id}, {"dataset", config.dataset.name}}};
  Log(absl::StrCat("trained ", CellId(v.id, kind, method), " ",
                   model.params.ToString(kind)));
  return Emit(record.ToJson().dump() + "\n", a.out);
}

struct EvaluateArgs {
  std::string model;
  std::string dataset;
  std::string test = "split";
  std::string protected_attribute;
  uint64_t seed = 0;
  std::string out;
};

absl::Status Evaluate(const EvaluateArgs& a) {
  TRADEOFF_ASSIGN_OR_RETURN(std::string text, ReadTextFile(a.model));
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(a.model, " is not JSON"));
  }
  TRADEOFF_ASSIGN_OR_RETURN(ModelRecord record, ModelRecord::FromJson(j));
  TRADEOFF_ASSIGN_OR_RETURN(DatasetConfig config, LoadDatasetConfig(a.dataset));
  std::optional<Dataset> test;
  if (a.test == "split") {
    TRADEOFF_ASSIGN_OR_RETURN(PreparedData prepared, PrepareData(config, a.seed));
    test = prepared.split.test;
  } else {
    TRADEOFF_ASSIGN_OR_RETURN(test, LoadForScoring(a.test, config));
  }
  const std::string attribute = a.protected_attribute.empty()
                                    ? record.protected_attribute
                                    : a.protected_attribute;
  TRADEOFF_ASSIGN_OR_RETURN(FeatureMatrix x, record.encoder.Transform(*test));
  TRADEOFF_ASSIGN_OR_RETURN(std::vector<int> groups,
                            GroupMembership(*test, attribute));
  GroupedPredictions p{record.model.Predict(x), x.labels, groups};
  json out = {{"rows", x.rows},
              {"accuracy", Accuracy(p.predicted, p.truth)},
              {"protected_attribute", attribute}};
  absl::StatusOr<FairnessReport> fairness = EqualizedOddsDifference(p);
  if (fairness.ok()) {
    out["fairness"] = fairness->ToJson();
    out["eq_odds_diff"] = fairness->equalized_odds_diff;
  } else if (absl::IsFailedPrecondition(fairness.status())) {
    out["fairness"] = nullptr;
    out["eq_odds_diff"] = nullptr;
    out["fairness_error"] = std::string(fairness.status().message());
  } else {
    return fairness.status();
  }
  return Emit(out.dump(2) + "\n", a.out);
}

absl::StatusOr<RunSummary> Run(const std::string& config_path,
                               std::optional<uint64_t> seed,
                               std::optional<int> workers, std::string out) {
  TRADEOFF_ASSIGN_OR_RETURN(std::string text, ReadTextFile(config_path));
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError(absl::StrCat(config_path, " is not JSON"));
  }
  if (seed) j["seed"] = *seed;
  if (out.empty()) {
    if (!j.contains("out")) {
      return absl::InvalidArgumentError("run needs --out or an 'out' config key");
    }
    out = (fs::path(config_path).parent_path() / j["out"].get<std::string>())
              .lexically_normal()
              .string();
  }
  TRADEOFF_ASSIGN_OR_RETURN(
      ExperimentConfig config,
      ParseExperimentConfig(j, fs::path(config_path).parent_path().string()));
  std::cout << "config digest " << config.digest << " seed " << config.seed
            << std::endl;
  RunOptions options{out, ResolveWorkers(workers), Log};
  TRADEOFF_ASSIGN_OR_RETURN(RunSummary summary, RunExperiment(config, options));
  std::cout << "cells " << summary.cells << " trained " << summary.trained
            << " skipped " << summary.skipped << " failed " << summary.failed
            << " records " << summary.records.size() << " results digest "
            << summary.results_digest << std::endl;
  return summary;
}

absl::StatusOr<std::vector<double>> ParseDiffs(const std::string& text) {
  std::vector<double> diffs;
  for (absl::string_view part : absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    std::optional<double> v = ParseNumber(std::string(absl::StripAsciiWhitespace(part)));
    if (!v) {
      return absl::InvalidArgumentError(
          absl::StrCat("'", std::string(part), "' is not a number"));
    }
    diffs.push_back(*v);
  }
  return diffs;
}

int Exit(const absl::Status& status) {
  if (status.ok()) return 0;
  std::cerr << "error: " << status << std::endl;
  return 1;
}

}  // namespace
}  // namespace tradeoff

int main(int argc, char** argv) {
  using namespace tradeoff;
  CLI::App app{"Privacy, fairness and predictive performance trade-off bench"};
  app.require_subcommand(1);

  SynthesizeArgs synth;
  CLI::App* synthesize = app.add_subcommand("synthesize", "Generate PrivateSMOTE variants");
  synthesize->add_option("--dataset", synth.dataset, "Dataset config")->required();
  synthesize->add_option("--method", synth.method, "Synthesizer")->capture_default_str();
  synthesize->add_option("--grid", synth.grid, "full or single")->capture_default_str();
  synthesize->add_option("--seed", synth.seed, "Global seed");
  synthesize->add_option("--out", synth.out, "Output directory")->required();

  std::string risk_original, risk_variant;
  uint64_t risk_seed = 0;
  CLI::App* risk = app.add_subcommand("risk", "Linkage risk of one variant");
  risk->add_option("--original", risk_original, "Dataset config")->required();
  risk->add_option("--variant", risk_variant, "Variant file or 'original'")->required();
  risk->add_option("--seed", risk_seed, "Seed of the train/test split");

  TrainArgs train_args;
  uint64_t train_seed = 0;
  CLI::App* train = app.add_subcommand("train", "Grid-search one learner on a variant");
  train->add_option("--config", train_args.config, "Experiment config");
  train->add_option("--dataset", train_args.dataset, "Dataset config");
  train->add_option("--variant", train_args.variant, "Variant file or 'original'")
      ->capture_default_str();
  train->add_option("--algo", train_args.algo, "logit, rf or xgb")->capture_default_str();
  train->add_option("--fairness", train_args.fairness, "none or eg")->capture_default_str();
  train->add_option("--constraint", train_args.constraint, "eo or dp")->capture_default_str();
  train->add_option("--eps", train_args.eps, "Constraint slack")->capture_default_str();
  CLI::Option* train_seed_opt = train->add_option("--seed", train_seed, "Global seed");
  train->add_option("--out", train_args.out, "Model record file (stdout if absent)");

  EvaluateArgs eval_args;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score a model record on test data");
  evaluate->add_option("--model", eval_args.model, "Model record")->required();
  evaluate->add_option("--dataset", eval_args.dataset, "Dataset config")->required();
  evaluate->add_option("--test", eval_args.test, "Test file, or 'split' for the held-out split")
      ->capture_default_str();
  evaluate->add_option("--protected", eval_args.protected_attribute,
                       "Protected attribute (defaults to the record's)");
  evaluate->add_option("--seed", eval_args.seed, "Seed of the train/test split");
  evaluate->add_option("--out", eval_args.out, "Output file (stdout if absent)");

  std::string run_config, run_out;
  uint64_t run_seed = 0;
  int run_workers = 0;
  CLI::App* run = app.add_subcommand("run", "Full sweep from an experiment config");
  run->add_option("--config", run_config, "Experiment config")->required();
  CLI::Option* run_seed_opt = run->add_option("--seed", run_seed, "Override the config seed");
  CLI::Option* run_workers_opt =
      run->add_option("--workers", run_workers, "Parallel variant tasks");
  run->add_option("--out", run_out, "Output directory");

  std::string paths_results, paths_optimize, paths_prioritize, paths_out;
  double paths_rope = 0.0;
  CLI::App* paths = app.add_subcommand("paths", "Optimization path table");
  paths->add_option("--results", paths_results, "Results table")->required();
  paths->add_option("--optimize", paths_optimize, "acc, fair or priv")->required();
  paths->add_option("--prioritize", paths_prioritize, "acc, fair or priv")->required();
  paths->add_option("--rope", paths_rope, "Draw band in percent")->capture_default_str();
  paths->add_option("--out", paths_out, "Output file (stdout if absent)");

  std::string bayes_results, bayes_diffs, bayes_out, bayes_vector = "acc";
  BayesOptions bayes_options;
  CLI::App* bayes = app.add_subcommand(
      "bayes", "Bayes sign tests: three-way comparison of a results table, or one "
               "list of percentage differences");
  bayes->add_option("--results", bayes_results, "Results table");
  bayes->add_option("--diffs", bayes_diffs, "Comma-separated percentage differences");
  bayes->add_option("--vector", bayes_vector, "Orientation of --diffs: acc, fair or priv")
      ->capture_default_str();
  bayes->add_option("--rope-low", bayes_options.rope_low)->capture_default_str();
  bayes->add_option("--rope-high", bayes_options.rope_high)->capture_default_str();
  bayes->add_option("--prior", bayes_options.prior_strength)->capture_default_str();
  bayes->add_option("--samples", bayes_options.mc_samples)->capture_default_str();
  bayes->add_option("--seed", bayes_options.seed)->capture_default_str();
  bayes->add_option("--out", bayes_out, "Output file (stdout if absent)");

  std::string report_results, report_config, report_out;
  uint64_t report_seed = 0;
  CLI::App* report = app.add_subcommand("report", "All analysis tables for a results table");
  report->add_option("--results", report_results, "Results table")->required();
  report->add_option("--config", report_config,
                     "Experiment config supplying analysis settings and digest");
  CLI::Option* report_seed_opt = report->add_option("--seed", report_seed, "Seed");
  report->add_option("--out", report_out, "Report directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (*synthesize) return Exit(Synthesize(synth));
  if (*risk) return Exit(Risk(risk_original, risk_variant, risk_seed));
  if (*train) {
    if (*train_seed_opt) train_args.seed = train_seed;
    return Exit(Train(train_args));
  }
  if (*evaluate) return Exit(Evaluate(eval_args));
  if (*run) {
    absl::StatusOr<RunSummary> summary = Run(
        run_config,
        *run_seed_opt ? std::optional<uint64_t>(run_seed) : std::nullopt,
        *run_workers_opt ? std::optional<int>(run_workers) : std::nullopt, run_out);
    if (!summary.ok()) return Exit(summary.status());
    return summary->failed == 0 ? 0 : 2;
  }
  if (*paths) {
    auto body = [&]() -> absl::Status {
      TRADEOFF_ASSIGN_OR_RETURN(Vector v1, ParseVector(paths_optimize));
      TRADEOFF_ASSIGN_OR_RETURN(Vector v2, ParseVector(paths_prioritize));
      TRADEOFF_ASSIGN_OR_RETURN(std::vector<SolutionRecord> records,
                                ReadResultsTable(paths_results));
      TRADEOFF_ASSIGN_OR_RETURN(PathReport path,
                                OptimizationPath(records, v1, v2, paths_rope));
      return Emit(FormatPathReport(path), paths_out);
    };
    return Exit(body());
  }
  if (*bayes) {
    auto body = [&]() -> absl::Status {
      if (!bayes_diffs.empty()) {
        TRADEOFF_ASSIGN_OR_RETURN(Vector v, ParseVector(bayes_vector));
        TRADEOFF_ASSIGN_OR_RETURN(std::vector<double> diffs, ParseDiffs(bayes_diffs));
        TRADEOFF_ASSIGN_OR_RETURN(
            BayesComparison c, BayesSignTest(diffs, HigherIsBetter(v), bayes_options));
        return Emit(FormatBayesComparison(c), bayes_out);
      }
      if (bayes_results.empty()) {
        return absl::InvalidArgumentError("bayes needs --results or --diffs");
      }
      TRADEOFF_ASSIGN_OR_RETURN(std::vector<SolutionRecord> records,
                                ReadResultsTable(bayes_results));
      TRADEOFF_ASSIGN_OR_RETURN(std::vector<ThreeWayEntry> entries,
                                ThreeWayComparison(records, bayes_options));
      return Emit(FormatThreeWay(entries), bayes_out);
    };
    return Exit(body());
  }
  if (*report) {
    auto body = [&]() -> absl::Status {
      TRADEOFF_ASSIGN_OR_RETURN(std::string table, ReadTextFile(report_results));
      TRADEOFF_ASSIGN_OR_RETURN(std::vector<SolutionRecord> records,
                                ParseResultsTable(table));
      ReportOptions options;
      options.results_digest = HexDigest(Fnv1a64(table));
      if (!report_config.empty()) {
        TRADEOFF_ASSIGN_OR_RETURN(ExperimentConfig config,
                                  LoadExperimentConfig(report_config));
        options.config_digest = config.digest;
        options.seed = config.seed;
        options.bayes = config.bayes;
        options.path_rope = config.path_rope;
      }
      if (*report_seed_opt) options.seed = report_seed;
      return WriteReport(records, options, report_out);
    };
    return Exit(body());
  }
  return 0;
}

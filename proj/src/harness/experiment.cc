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


#include "tradeoff/harness/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "tradeoff/common/csv.h"
#include "tradeoff/common/digest.h"
#include "tradeoff/common/random.h"
#include "tradeoff/common/status_macros.h"
#include "tradeoff/fairness/exponentiated_gradient.h"
#include "tradeoff/harness/report.h"
#include "tradeoff/privacy/equivalence.h"
#include "tradeoff/privacy/private_smote.h"

namespace tradeoff {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

enum class VariantSource { kPrivateSmote, kImported, kOriginal };

struct PlannedVariant {
  std::string id;
  VariantSource source = VariantSource::kPrivateSmote;
  PrivateSmoteParams params;
  std::string file;
};

struct PlannedCell {
  std::string id;
  size_t variant = 0;  // index into the variant plan
  size_t learner = 0;  // index into config.learners
  std::string fairness_method;
};

absl::StatusOr<std::vector<PlannedVariant>> PlanVariants(
    const ExperimentConfig& config, const PreparedData& prepared) {
  std::vector<PlannedVariant> plan;
  const SynthesisConfig& s = config.synthesis;
  if (s.include_original) {
    plan.push_back({"original", VariantSource::kOriginal, {}, ""});
  }
  if (s.privatesmote) {
    for (const PrivateSmoteParams& p :
         PrivateSmoteGrid(s.ratios, s.knns, s.epsilons,
                          DeriveSeed(config.seed, "synthesis"))) {
      TRADEOFF_RETURN_IF_ERROR(ValidatePrivateSmoteParams(p));
      plan.push_back({PrivateSmoteVariantId(p), VariantSource::kPrivateSmote, p, ""});
    }
  }
  if (!s.imported_dir.empty()) {
    std::error_code ec;
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(s.imported_dir, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") {
        files.push_back(entry.path().string());
      }
    }
    if (ec) {
      return absl::NotFoundError(absl::StrCat(
          "cannot scan imported variants in ", s.imported_dir, ": ", ec.message()));
    }
    std::sort(files.begin(), files.end());
    for (const std::string& file : files) {
      TRADEOFF_ASSIGN_OR_RETURN(
          SyntheticVariant v,
          ReadVariant(prepared.split.train, prepared.config.quasi_identifiers, file));
      plan.push_back({v.id, VariantSource::kImported, {}, file});
    }
  }
  std::set<std::string> seen;
  for (const PlannedVariant& v : plan) {
    if (v.id.find_first_of("/\\") != std::string::npos || v.id.empty() ||
        v.id.front() == '.') {
      return absl::InvalidArgumentError(
          absl::StrCat("variant id '", v.id, "' is not a plain file name"));
    }
    if (!seen.insert(v.id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate variant id '", v.id, "'"));
    }
  }
  return plan;
}

// Latest ledger entry per cell.
std::map<std::string, json> ReadLedger(const std::string& path) {
  std::map<std::string, json> latest;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json entry = json::parse(line, nullptr, false);
    if (entry.is_discarded() || !entry.is_object() || !entry.contains("cell")) {
      continue;  // torn or foreign line
    }
    const std::string cell = entry["cell"].get<std::string>();
    latest[cell] = std::move(entry);
  }
  return latest;
}

absl::Status WriteAtomically(const std::string& path, std::string_view contents) {
  const std::string temp = path + ".tmp";
  TRADEOFF_RETURN_IF_ERROR(WriteTextFile(temp, contents));
  std::error_code ec;
  fs::rename(temp, path, ec);
  if (ec) {
    return absl::InternalError(
        absl::StrCat("cannot move ", temp, " to ", path, ": ", ec.message()));
  }
  return absl::OkStatus();
}

json RecordToJson(const SolutionRecord& r) {
  return {{"dataset", r.dataset},
          {"variant_id", r.variant_id},
          {"method", r.method},
          {"params", r.params},
          {"algorithm", r.algorithm},
          {"fairness_method", r.fairness_method},
          {"accuracy", r.accuracy},
          {"eq_odds_diff", r.eq_odds_diff ? json(*r.eq_odds_diff) : json(nullptr)},
          {"linkage_risk", r.linkage_risk}};
}

absl::StatusOr<SolutionRecord> RecordFromJson(const json& j) {
  SolutionRecord r;
  try {
    r.dataset = j.at("dataset").get<std::string>();
    r.variant_id = j.at("variant_id").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.params = j.at("params").get<std::string>();
    r.algorithm = j.at("algorithm").get<std::string>();
    r.fairness_method = j.at("fairness_method").get<std::string>();
    r.accuracy = j.at("accuracy").get<double>();
    if (!j.at("eq_odds_diff").is_null()) {
      r.eq_odds_diff = j["eq_odds_diff"].get<double>();
    }
    r.linkage_risk = j.at("linkage_risk").get<double>();
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("cell record: ", e.what()));
  }
  TRADEOFF_RETURN_IF_ERROR(r.Validate());
  return r;
}

std::string AlgorithmName(LearnerKind kind, std::string_view fairness_method) {
  const std::string prefix = fairness_method == kNoFairnessMethod
                                 ? std::string("Agnostic")
                                 : std::string(fairness_method);
  return absl::StrCat(prefix, "-", std::string(LearnerDisplayName(kind)));
}

absl::StatusOr<FittedModel> FairnessAwareModel(const ExperimentConfig& config,
                                               const FeatureMatrix& train,
                                               std::span<const int> train_groups,
                                               const FittedModel& agnostic,
                                               uint64_t seed,
                                               json* details) {
  EgParams params = config.eg;
  params.base = agnostic.kind;
  params.base_params = agnostic.params;
  params.seed = seed;
  TRADEOFF_ASSIGN_OR_RETURN(EgResult eg,
                            ExponentiatedGradient(train, train_groups, params));
  FittedModel model;
  model.kind = agnostic.kind;
  model.params = agnostic.params;
  model.classifier = eg.model;
  model.seed = seed;
  model.flags = eg.flags;
  if (details != nullptr) {
    *details = {{"constraint", std::string(FairnessConstraintName(params.constraint))},
                {"eps", params.eps},
                {"max_iterations", params.max_iterations},
                {"eta", params.eta},
                {"rounds", eg.rounds.size()},
                {"best_prefix", eg.best_prefix},
                {"max_violation", eg.max_violation},
                {"flags", eg.flags}};
  }
  return model;
}

class Sweep {
 public:
  Sweep(const ExperimentConfig& config, const RunOptions& options,
        const PreparedData& prepared, std::vector<PlannedVariant> variants,
        std::vector<PlannedCell> cells)
      : config_(config),
        options_(options),
        prepared_(prepared),
        variants_(std::move(variants)),
        cells_(std::move(cells)) {}

  // Runs every variant with pending cells; returns (trained, failed).
  std::pair<size_t, size_t> Run(const std::set<std::string>& pending,
                                int workers) {
    std::vector<size_t> todo;
    for (size_t v = 0; v < variants_.size(); ++v) {
      for (const PlannedCell& c : cells_) {
        if (c.variant == v && pending.count(c.id)) {
          todo.push_back(v);
          break;
        }
      }
    }
    if (todo.empty()) return {0, 0};
    if (NeedsNeighbors(todo, pending)) BuildNeighbors();

    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (size_t k = next++; k < todo.size(); k = next++) {
        RunVariant(todo[k], pending);
      }
    };
    const size_t threads =
        std::min(todo.size(), static_cast<size_t>(std::max(1, workers)));
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (std::thread& t : pool) t.join();
    }
    return {trained_, failed_};
  }

 private:
  bool NeedsNeighbors(const std::vector<size_t>& todo,
                      const std::set<std::string>&) const {
    for (size_t v : todo) {
      if (variants_[v].source == VariantSource::kPrivateSmote) return true;
    }
    return false;
  }

  void BuildNeighbors() {
    absl::StatusOr<EquivalenceClassIndex> index = IndexEquivalenceClasses(
        prepared_.split.train, prepared_.config.quasi_identifiers);
    if (!index.ok()) return;  // PrivateSmote reports the error per variant
    int knn = 0;
    for (const PlannedVariant& v : variants_) knn = std::max(knn, v.params.knn);
    const std::vector<size_t> single_outs = SingleOuts(*index);
    Log(absl::StrCat("neighbour table: ", single_outs.size(), " single-outs, k=",
                     knn));
    neighbors_ = std::make_unique<NeighborTable>(ComputeNeighbors(
        prepared_.split.train, single_outs, static_cast<size_t>(knn)));
  }

  absl::StatusOr<SyntheticVariant> Materialize(const PlannedVariant& v) const {
    switch (v.source) {
      case VariantSource::kOriginal:
        return OriginalVariant(prepared_.split.train);
      case VariantSource::kImported:
        return ReadVariant(prepared_.split.train,
                           prepared_.config.quasi_identifiers, v.file);
      case VariantSource::kPrivateSmote:
        break;
    }
    return PrivateSmote(prepared_.split.train, prepared_.config.quasi_identifiers,
                        v.params, neighbors_.get());
  }

  void RunVariant(size_t v, const std::set<std::string>& pending) {
    const auto start = std::chrono::steady_clock::now();
    const PlannedVariant& plan = variants_[v];
    std::vector<const PlannedCell*> cells;
    for (const PlannedCell& c : cells_) {
      if (c.variant == v && pending.count(c.id)) cells.push_back(&c);
    }
    auto fail_all = [&](const absl::Status& status) {
      for (const PlannedCell* c : cells) Finish(*c, status, start, {});
    };

    absl::StatusOr<SyntheticVariant> variant = Materialize(plan);
    if (!variant.ok()) return fail_all(variant.status());
    absl::StatusOr<LinkageRisk> risk = ComputeLinkageRisk(
        prepared_.split.train, *variant, prepared_.config.quasi_identifiers);
    if (!risk.ok()) return fail_all(risk.status());
    std::string variant_file;
    if (config_.synthesis.save_variants && plan.source != VariantSource::kOriginal) {
      const fs::path dir = fs::path(options_.out_dir) / "variants";
      absl::Status written = WriteVariant(*variant, dir.string());
      if (!written.ok()) return fail_all(written);
      variant_file = absl::StrCat("variants/", variant->id, ".csv");
    }
    absl::StatusOr<EncodedSplit> encoded = Encode(
        variant->data, prepared_.split.test, prepared_.config.fairness_attribute);
    if (!encoded.ok()) return fail_all(encoded.status());
    Log(absl::StrCat(variant->id, ": ", variant->data.num_rows(), " rows, risk ",
                     FormatNumber(risk->at_risk_fraction)));

    const json variant_json = {
        {"id", variant->id},
        {"method", variant->provenance.method},
        {"family", variant->provenance.family},
        {"parameters", variant->provenance.parameters},
        {"seed", variant->provenance.seed},
        {"rows", variant->data.num_rows()},
        {"synthetic_rows", variant->num_synthetic()},
        {"flags", variant->flags},
        {"file", variant_file.empty() ? json(nullptr) : json(variant_file)}};
    const json linkage = {{"matches", risk->matches},
                          {"single_outs", risk->single_outs},
                          {"at_risk_fraction", risk->at_risk_fraction}};

    for (size_t l = 0; l < config_.learners.size(); ++l) {
      std::vector<const PlannedCell*> mine;
      for (const PlannedCell* c : cells) {
        if (c->learner == l) mine.push_back(c);
      }
      if (mine.empty()) continue;
      const HyperGrid& grid = config_.learners[l];
      const uint64_t seed = DeriveSeed(
          config_.seed, absl::StrCat("cell/", variant->id, "/",
                                     std::string(LearnerKindName(grid.kind))));
      absl::StatusOr<GridSearchResult> search =
          GridSearch(encoded->train, grid, seed, config_.cv);
      if (!search.ok()) {
        for (const PlannedCell* c : mine) Finish(*c, search.status(), start, {});
        continue;
      }
      const json grid_json = {{"best_index", search->best_index},
                              {"mean_scores", search->mean_scores},
                              {"repetitions_used", search->repetitions_used},
                              {"flags", search->flags}};
      for (const PlannedCell* c : mine) {
        json cell = {{"cell", c->id},
                     {"config_digest", config_.digest},
                     {"dataset", prepared_.config.name},
                     {"variant", variant_json},
                     {"linkage", linkage},
                     {"learner", std::string(LearnerKindName(grid.kind))},
                     {"fairness_method", c->fairness_method},
                     {"grid_search", grid_json},
                     {"seeds",
                      {{"global", config_.seed},
                       {"split", DeriveSeed(config_.seed, "split")},
                       {"variant", variant->provenance.seed},
                       {"cell", seed}}}};
        absl::StatusOr<FittedModel> model = search->model;
        if (c->fairness_method != kNoFairnessMethod) {
          const uint64_t eg_seed = DeriveSeed(seed, "eg");
          cell["seeds"]["eg"] = eg_seed;
          json details;
          model = FairnessAwareModel(config_, encoded->train,
                                     encoded->train_groups, search->model,
                                     eg_seed, &details);
          cell["eg"] = details;
        }
        if (!model.ok()) {
          Finish(*c, model.status(), start, {});
          continue;
        }
        SolutionMeta meta{prepared_.config.name, &*variant, grid.kind,
                          c->fairness_method};
        absl::StatusOr<Evaluation> evaluation = EvaluateSolution(
            *model->classifier, encoded->test, encoded->test_groups, meta, *risk);
        if (!evaluation.ok()) {
          Finish(*c, evaluation.status(), start, {});
          continue;
        }
        json summary = model->ToJson();
        summary.erase("model");
        cell["model"] = summary;
        cell["fairness"] =
            evaluation->fairness ? evaluation->fairness->ToJson() : json(nullptr);
        if (!evaluation->fairness) {
          cell["fairness_error"] = evaluation->fairness_error;
          Log(absl::StrCat(c->id, ": fairness undefined on test (",
                           evaluation->fairness_error, ")"));
        }
        cell["record"] = RecordToJson(evaluation->record);
        if (config_.save_models) {
          ModelRecord record{encoded->encoder, *model, c->fairness_method,
                             prepared_.config.fairness_attribute,
                             {{"cell", c->id}}};
          const std::string rel = absl::StrCat("models/", c->id, ".json");
          absl::Status saved = WriteAtomically(
              (fs::path(options_.out_dir) / rel).string(), record.ToJson().dump());
          if (!saved.ok()) {
            Finish(*c, saved, start, {});
            continue;
          }
          cell["model_file"] = rel;
        }
        Finish(*c, absl::OkStatus(), start, cell);
      }
    }
  }

  void Finish(const PlannedCell& cell, const absl::Status& status,
              std::chrono::steady_clock::time_point start, const json& record) {
    const std::string artifact = absl::StrCat("cells/", cell.id, ".json");
    absl::Status outcome = status;
    if (outcome.ok()) {
      outcome = WriteAtomically((fs::path(options_.out_dir) / artifact).string(),
                                record.dump(2) + "\n");
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    json entry = {{"cell", cell.id},
                  {"status", outcome.ok() ? "done" : "failed"},
                  {"config_digest", config_.digest},
                  {"artifact", outcome.ok() ? json(artifact) : json(nullptr)},
                  {"wall_time_s", seconds}};
    if (outcome.ok()) {
      entry["seeds"] = record["seeds"];
    } else {
      entry["error"] = outcome.ToString();
    }
    std::lock_guard<std::mutex> lock(mu_);
    std::ofstream ledger(fs::path(options_.out_dir) / "ledger.jsonl",
                         std::ios::app);
    ledger << entry.dump() << "\n";
    ledger.flush();
    if (outcome.ok()) {
      ++trained_;
    } else {
      ++failed_;
    }
    LogLocked(absl::StrCat(cell.id, ": ", outcome.ok() ? "done" : "failed",
                           outcome.ok() ? "" : absl::StrCat(" (", outcome.ToString(), ")")));
  }

  void Log(std::string_view line) {
    std::lock_guard<std::mutex> lock(mu_);
    LogLocked(line);
  }
  void LogLocked(std::string_view line) {
    if (options_.log) options_.log(line);
  }

  const ExperimentConfig& config_;
  const RunOptions& options_;
  const PreparedData& prepared_;
  const std::vector<PlannedVariant> variants_;
  const std::vector<PlannedCell> cells_;
  std::unique_ptr<NeighborTable> neighbors_;
  std::mutex mu_;
  size_t trained_ = 0;
  size_t failed_ = 0;
};

}  // namespace

absl::StatusOr<PreparedData> PrepareData(const DatasetConfig& config,
                                         uint64_t seed) {
  TRADEOFF_ASSIGN_OR_RETURN(Dataset raw, LoadDataset(config.path, config));
  TRADEOFF_ASSIGN_OR_RETURN(Dataset data, BinarizeAllProtected(raw, config));
  TRADEOFF_ASSIGN_OR_RETURN(Split split,
                            SplitDataset(data, DeriveSeed(seed, "split")));
  const uint64_t test_digest = DatasetDigest(split.test);
  return PreparedData{config, std::move(data), std::move(split), test_digest};
}

SyntheticVariant OriginalVariant(const Dataset& train) {
  SyntheticVariant v{.id = "original",
                     .data = train,
                     .provenance = {},
                     .replaced_rows = {},
                     .synthetic_begin = 0,
                     .flags = {},
                     .sources = {}};
  v.provenance.method = "None";
  v.provenance.family = "Original";
  v.provenance.source_dataset = train.name();
  return v;
}

std::string VariantParamsText(const SyntheticVariant& variant) {
  const json& p = variant.provenance.parameters;
  auto text = [](const json& v) {
    if (v.is_number()) return FormatNumber(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  std::vector<std::string> parts;
  if (variant.provenance.method == kPrivateSmoteMethod) {
    for (const char* key : {"ratio", "knn", "eps"}) {
      if (p.contains(key)) parts.push_back(absl::StrCat(key, "=", text(p[key])));
    }
    return absl::StrJoin(parts, ";");
  }
  if (p.is_object()) {
    for (const auto& [key, value] : p.items()) {
      parts.push_back(absl::StrCat(key, "=", text(value)));
    }
  }
  return absl::StrJoin(parts, ";");
}

absl::StatusOr<Evaluation> EvaluateSolution(const Classifier& model,
                                            const FeatureMatrix& test,
                                            std::span<const int> test_groups,
                                            const SolutionMeta& meta,
                                            const LinkageRisk& risk) {
  if (meta.variant == nullptr) {
    return absl::InvalidArgumentError("evaluation needs the variant");
  }
  if (test.labels.size() != test.rows || test.rows == 0) {
    return absl::InvalidArgumentError("evaluation needs a labeled test set");
  }
  Evaluation out;
  GroupedPredictions p{PredictLabels(model, test), test.labels,
                       std::vector<int>(test_groups.begin(), test_groups.end())};
  TRADEOFF_RETURN_IF_ERROR(p.Validate());
  SolutionRecord& r = out.record;
  r.dataset = meta.dataset;
  r.variant_id = meta.variant->id;
  r.method = meta.variant->provenance.family;
  r.params = VariantParamsText(*meta.variant);
  r.algorithm = AlgorithmName(meta.learner, meta.fairness_method);
  r.fairness_method = meta.fairness_method;
  r.accuracy = Accuracy(p.predicted, p.truth);
  r.linkage_risk = risk.at_risk_fraction;
  absl::StatusOr<FairnessReport> fairness = EqualizedOddsDifference(p);
  if (fairness.ok()) {
    r.eq_odds_diff = fairness->equalized_odds_diff;
    out.fairness = *fairness;
  } else if (absl::IsFailedPrecondition(fairness.status())) {
    out.fairness_error = std::string(fairness.status().message());
  } else {
    return fairness.status();
  }
  return out;
}

json ModelRecord::ToJson() const {
  return {{"encoder", encoder.ToJson()},
          {"fitted", model.ToJson()},
          {"fairness_method", fairness_method},
          {"protected_attribute", protected_attribute},
          {"extra", extra}};
}

absl::StatusOr<ModelRecord> ModelRecord::FromJson(const json& j) {
  if (!j.is_object() || !j.contains("encoder") || !j.contains("fitted")) {
    return absl::InvalidArgumentError("model record needs encoder and fitted");
  }
  ModelRecord r;
  TRADEOFF_ASSIGN_OR_RETURN(r.encoder, FeatureEncoder::FromJson(j["encoder"]));
  TRADEOFF_ASSIGN_OR_RETURN(r.model, FittedModel::FromJson(j["fitted"], LoadClassifier));
  r.fairness_method = j.value("fairness_method", std::string(kNoFairnessMethod));
  r.protected_attribute = j.value("protected_attribute", std::string());
  r.extra = j.value("extra", json::object());
  return r;
}

absl::StatusOr<FittedModel> TrainCell(const ExperimentConfig& config,
                                      const FeatureMatrix& train,
                                      std::span<const int> train_groups,
                                      const HyperGrid& grid,
                                      std::string_view fairness_method,
                                      uint64_t seed) {
  TRADEOFF_ASSIGN_OR_RETURN(GridSearchResult search,
                            GridSearch(train, grid, seed, config.cv));
  if (fairness_method == kNoFairnessMethod) return search.model;
  if (fairness_method != kEgMethod) {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown fairness method '", std::string(fairness_method), "'"));
  }
  return FairnessAwareModel(config, train, train_groups, search.model,
                            DeriveSeed(seed, "eg"), nullptr);
}

std::string CellId(std::string_view variant_id, LearnerKind learner,
                   std::string_view fairness_method) {
  return absl::StrCat(std::string(variant_id), "__",
                      std::string(LearnerKindName(learner)), "__",
                      fairness_method == kNoFairnessMethod
                          ? std::string("agnostic")
                          : absl::AsciiStrToLower(std::string(fairness_method)));
}

int ResolveWorkers(std::optional<int> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv(kWorkersEnvVar)) {
    int value = 0;
    if (absl::SimpleAtoi(env, &value) && value > 0) return value;
  }
  const unsigned cores = std::thread::hardware_concurrency();
  return cores == 0 ? 1 : static_cast<int>(cores);
}

absl::StatusOr<RunSummary> RunExperiment(const ExperimentConfig& config,
                                         const RunOptions& options) {
  if (options.out_dir.empty()) {
    return absl::InvalidArgumentError("run needs an output directory");
  }
  for (const char* sub : {"cells", "variants", "models", "reports"}) {
    std::error_code ec;
    fs::create_directories(fs::path(options.out_dir) / sub, ec);
    if (ec) {
      return absl::PermissionDeniedError(absl::StrCat(
          "output directory ", options.out_dir, " is not writable: ", ec.message()));
    }
  }
  auto log = [&](std::string_view line) {
    if (options.log) options.log(line);
  };

  TRADEOFF_ASSIGN_OR_RETURN(PreparedData prepared,
                            PrepareData(config.dataset, config.seed));
  log(absl::StrCat("dataset ", prepared.config.name, ": ",
                   prepared.data.num_rows(), " rows, train ",
                   prepared.split.train.num_rows(), ", test ",
                   prepared.split.test.num_rows(), ", test digest ",
                   HexDigest(prepared.test_digest)));
  TRADEOFF_ASSIGN_OR_RETURN(std::vector<PlannedVariant> variants,
                            PlanVariants(config, prepared));

  std::vector<PlannedCell> cells;
  for (size_t v = 0; v < variants.size(); ++v) {
    for (size_t l = 0; l < config.learners.size(); ++l) {
      for (const std::string& method : config.fairness_methods) {
        cells.push_back({CellId(variants[v].id, config.learners[l].kind, method),
                         v, l, method});
      }
    }
  }

  const std::string ledger_path = (fs::path(options.out_dir) / "ledger.jsonl").string();
  const std::map<std::string, json> ledger = ReadLedger(ledger_path);
  std::set<std::string> pending;
  RunSummary summary;
  summary.cells = cells.size();
  for (const PlannedCell& c : cells) {
    auto it = ledger.find(c.id);
    const bool done =
        it != ledger.end() && it->second.value("status", "") == "done" &&
        it->second.value("config_digest", "") == config.digest &&
        fs::exists(fs::path(options.out_dir) / "cells" / (c.id + ".json"));
    if (done) {
      ++summary.skipped;
    } else {
      pending.insert(c.id);
    }
  }
  log(absl::StrCat(variants.size(), " variants, ", cells.size(), " cells, ",
                   pending.size(), " to train, ", options.workers, " workers"));

  Sweep sweep(config, options, prepared, variants, cells);
  std::tie(summary.trained, summary.failed) = sweep.Run(pending, options.workers);

  if (DatasetDigest(prepared.split.test) != prepared.test_digest) {
    return absl::InternalError("the test split changed during the sweep");
  }
  summary.test_digest = HexDigest(prepared.test_digest);

  for (const PlannedCell& c : cells) {
    const fs::path file = fs::path(options.out_dir) / "cells" / (c.id + ".json");
    if (!fs::exists(file)) continue;
    TRADEOFF_ASSIGN_OR_RETURN(std::string text, ReadTextFile(file.string()));
    const json cell = json::parse(text, nullptr, false);
    if (cell.is_discarded() || cell.value("config_digest", "") != config.digest ||
        !cell.contains("record")) {
      continue;
    }
    TRADEOFF_ASSIGN_OR_RETURN(SolutionRecord record, RecordFromJson(cell["record"]));
    summary.records.push_back(std::move(record));
  }
  SortRecords(summary.records);
  const std::string table = FormatResultsTable(summary.records);
  summary.results_digest = HexDigest(Fnv1a64(table));
  const fs::path results = fs::path(options.out_dir) / "results.csv";
  TRADEOFF_RETURN_IF_ERROR(WriteAtomically(results.string(), table));
  TRADEOFF_RETURN_IF_ERROR(WriteAtomically(results.string() + ".digest",
                                           summary.results_digest + "\n"));

  if (summary.records.empty()) {
    log("no solutions to report on");
    return summary;
  }
  ReportOptions report{config.digest, config.seed, summary.results_digest,
                       config.bayes, config.path_rope};
  TRADEOFF_RETURN_IF_ERROR(WriteReport(
      summary.records, report, (fs::path(options.out_dir) / "reports").string()));
  return summary;
}

}  // namespace tradeoff

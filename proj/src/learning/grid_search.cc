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

#include "tradeoff/learning/grid_search.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>

#include "absl/strings/str_cat.h"
#include "tradeoff/common/random.h"
#include "tradeoff/common/status_macros.h"
#include "tradeoff/learning/boosting.h"
#include "tradeoff/learning/logistic.h"
#include "tradeoff/learning/random_forest.h"

namespace tradeoff {
namespace {

using json = nlohmann::json;

constexpr double kScoreTieTolerance = 1e-12;

// Fewer estimators or iterations is preferred among tied points.
int64_t Cost(LearnerKind kind, const HyperParams& p) {
  return kind == LearnerKind::kLogistic ? p.max_iter : p.n_estimators;
}

double Score(const Classifier& model, const FeatureMatrix& valid) {
  return Accuracy(PredictLabels(model, valid), valid.labels);
}

// Validation accuracy of every grid point, sharing fits where the learners
// allow it.
absl::StatusOr<std::vector<double>> ScoreGrid(const FeatureMatrix& fit,
                                              const FeatureMatrix& valid,
                                              const HyperGrid& grid,
                                              uint64_t seed) {
  std::vector<double> scores(grid.points.size());
  const auto& points = grid.points;
  switch (grid.kind) {
    case LearnerKind::kLogistic: {
      std::map<double, std::vector<size_t>> by_c;
      for (size_t g = 0; g < points.size(); ++g) by_c[points[g].C].push_back(g);
      for (const auto& [c, members] : by_c) {
        int64_t longest = 0;
        for (size_t g : members) longest = std::max(longest, points[g].max_iter);
        TRADEOFF_ASSIGN_OR_RETURN(LogisticModel full,
                                  TrainLogistic(fit, c, longest));
        for (size_t g : members) {
          if (full.iterations() <= points[g].max_iter) {
            scores[g] = Score(full, valid);
          } else {
            TRADEOFF_ASSIGN_OR_RETURN(LogisticModel capped,
                                      TrainLogistic(fit, c, points[g].max_iter));
            scores[g] = Score(capped, valid);
          }
        }
      }
      break;
    }
    case LearnerKind::kRandomForest: {
      ForestOptions options;
      options.seed = seed;
      options.n_estimators = 0;
      options.max_depth = 0;
      for (const HyperParams& p : points) {
        options.n_estimators = std::max(options.n_estimators, p.n_estimators);
        options.max_depth = std::max(options.max_depth, p.max_depth);
      }
      const RandomForestModel forest = TrainRandomForest(
          BinnedMatrix::Build(fit), fit.labels, fit.weights, options);
      std::vector<int> sizes, depths;
      for (const HyperParams& p : points) {
        sizes.push_back(p.n_estimators);
        depths.push_back(p.max_depth);
      }
      std::sort(sizes.begin(), sizes.end());
      sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
      std::sort(depths.begin(), depths.end());
      depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
      const auto probabilities =
          forest.TruncatedProbabilities(valid, sizes, depths);
      for (size_t g = 0; g < points.size(); ++g) {
        const size_t k = static_cast<size_t>(
            std::lower_bound(sizes.begin(), sizes.end(), points[g].n_estimators) -
            sizes.begin());
        const size_t d = static_cast<size_t>(
            std::lower_bound(depths.begin(), depths.end(), points[g].max_depth) -
            depths.begin());
        std::vector<int> predicted(valid.rows);
        for (size_t r = 0; r < valid.rows; ++r) {
          predicted[r] = probabilities[k][d][r] > 0.5 ? 1 : 0;
        }
        scores[g] = Accuracy(predicted, valid.labels);
      }
      break;
    }
    case LearnerKind::kBoosting: {
      const BinnedMatrix binned = BinnedMatrix::Build(fit);
      std::map<std::pair<int, double>, std::vector<size_t>> groups;
      for (size_t g = 0; g < points.size(); ++g) {
        groups[{points[g].max_depth, points[g].learning_rate}].push_back(g);
      }
      for (const auto& [key, members] : groups) {
        BoostingOptions options{0, key.first, key.second};
        for (size_t g : members) {
          options.n_estimators =
              std::max(options.n_estimators, points[g].n_estimators);
        }
        const BoostingModel model = TrainBoosting(fit, binned, options);
        for (size_t g : members) {
          scores[g] = Score(model.Truncated(points[g].n_estimators), valid);
        }
      }
      break;
    }
  }
  return scores;
}

absl::Status ValidatePoint(LearnerKind kind, const HyperParams& p) {
  if (kind == LearnerKind::kLogistic) {
    if (!(p.C > 0.0) || !std::isfinite(p.C) || p.max_iter < 1) {
      return absl::InvalidArgumentError("logistic grid needs C > 0, max_iter >= 1");
    }
    return absl::OkStatus();
  }
  if (p.n_estimators < 1 || p.max_depth < 1) {
    return absl::InvalidArgumentError("tree grid needs n_estimators, max_depth >= 1");
  }
  if (kind == LearnerKind::kBoosting && !(p.learning_rate > 0.0)) {
    return absl::InvalidArgumentError("boosting grid needs learning_rate > 0");
  }
  return absl::OkStatus();
}

}  // namespace

HyperGrid HyperGrid::Default(LearnerKind kind) {
  HyperGrid grid;
  grid.kind = kind;
  switch (kind) {
    case LearnerKind::kLogistic:
      for (double c : {0.001, 1.0, 10000.0}) {
        for (int64_t it : {int64_t{1000000}, int64_t{10000000}}) {
          HyperParams p;
          p.C = c;
          p.max_iter = it;
          grid.points.push_back(p);
        }
      }
      break;
    case LearnerKind::kRandomForest:
    case LearnerKind::kBoosting:
      for (int n : {100, 250, 500}) {
        for (int d : {4, 7, 10}) {
          if (kind == LearnerKind::kRandomForest) {
            grid.points.push_back(HyperParams{n, d, 0.0, 0.0, 0});
            continue;
          }
          for (double lr : {0.1, 0.01}) {
            grid.points.push_back(HyperParams{n, d, lr, 0.0, 0});
          }
        }
      }
      break;
  }
  return grid;
}

absl::StatusOr<HyperGrid> HyperGrid::FromJson(LearnerKind kind, const json& j) {
  if (!j.is_object()) return absl::InvalidArgumentError("grid must be an object");
  std::vector<double> cs{0.001, 1.0, 10000.0}, rates{0.1, 0.01};
  std::vector<int64_t> iters{1000000, 10000000};
  std::vector<int> estimators{100, 250, 500}, depths{4, 7, 10};
  try {
    if (j.contains("C")) cs = j["C"].get<std::vector<double>>();
    if (j.contains("max_iter")) iters = j["max_iter"].get<std::vector<int64_t>>();
    if (j.contains("n_estimators")) {
      estimators = j["n_estimators"].get<std::vector<int>>();
    }
    if (j.contains("max_depth")) depths = j["max_depth"].get<std::vector<int>>();
    if (j.contains("learning_rate")) {
      rates = j["learning_rate"].get<std::vector<double>>();
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("grid: ", e.what()));
  }
  HyperGrid grid;
  grid.kind = kind;
  if (kind == LearnerKind::kLogistic) {
    for (double c : cs) {
      for (int64_t it : iters) grid.points.push_back(HyperParams{0, 0, 0.0, c, it});
    }
  } else {
    for (int n : estimators) {
      for (int d : depths) {
        if (kind == LearnerKind::kRandomForest) {
          grid.points.push_back(HyperParams{n, d, 0.0, 0.0, 0});
          continue;
        }
        for (double lr : rates) grid.points.push_back(HyperParams{n, d, lr, 0.0, 0});
      }
    }
  }
  if (grid.points.empty()) return absl::InvalidArgumentError("grid is empty");
  for (const HyperParams& p : grid.points) {
    TRADEOFF_RETURN_IF_ERROR(ValidatePoint(kind, p));
  }
  return grid;
}

absl::StatusOr<FittedModel> TrainLearner(const FeatureMatrix& x,
                                         LearnerKind kind,
                                         const HyperParams& params,
                                         uint64_t seed) {
  TRADEOFF_RETURN_IF_ERROR(ValidatePoint(kind, params));
  FittedModel model;
  model.kind = kind;
  model.params = params;
  model.seed = seed;
  switch (kind) {
    case LearnerKind::kLogistic: {
      TRADEOFF_ASSIGN_OR_RETURN(LogisticModel m,
                                TrainLogistic(x, params.C, params.max_iter));
      if (!m.converged()) model.flags.push_back("not_converged");
      model.classifier = std::make_shared<const LogisticModel>(std::move(m));
      break;
    }
    case LearnerKind::kRandomForest: {
      ForestOptions options;
      options.n_estimators = params.n_estimators;
      options.max_depth = params.max_depth;
      options.seed = seed;
      TRADEOFF_ASSIGN_OR_RETURN(RandomForestModel m, TrainRandomForest(x, options));
      model.classifier = std::make_shared<const RandomForestModel>(std::move(m));
      break;
    }
    case LearnerKind::kBoosting: {
      BoostingOptions options{params.n_estimators, params.max_depth,
                              params.learning_rate};
      TRADEOFF_ASSIGN_OR_RETURN(BoostingModel m, TrainBoosting(x, options));
      model.classifier = std::make_shared<const BoostingModel>(std::move(m));
      break;
    }
  }
  return model;
}

std::vector<int> StratifiedFolds(std::span<const int> labels, int k,
                                 uint64_t seed) {
  std::map<int, std::vector<size_t>> by_class;
  for (size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  std::vector<int> fold(labels.size(), 0);
  Rng rng(seed);
  size_t position = 0;
  for (auto& [label, rows] : by_class) {
    rng.Shuffle(rows);
    for (size_t i : rows) fold[i] = static_cast<int>(position++ % k);
  }
  return fold;
}

absl::StatusOr<GridSearchResult> GridSearch(const FeatureMatrix& train,
                                            const HyperGrid& grid,
                                            uint64_t seed,
                                            const CvOptions& options) {
  if (train.rows < 10) {
    return absl::InvalidArgumentError(
        absl::StrCat("grid search needs >= 10 rows, got ", train.rows));
  }
  if (train.labels.size() != train.rows) {
    return absl::InvalidArgumentError("grid search needs labels");
  }
  if (grid.points.empty()) return absl::InvalidArgumentError("grid is empty");
  if (options.folds < 2 || options.repetitions < 1) {
    return absl::InvalidArgumentError("need >= 2 folds and >= 1 repetition");
  }
  for (const HyperParams& p : grid.points) {
    TRADEOFF_RETURN_IF_ERROR(ValidatePoint(grid.kind, p));
  }

  GridSearchResult result;
  std::vector<double> totals(grid.points.size(), 0.0);
  size_t evaluations = 0;
  const int k = options.folds;
  for (int rep = 0; rep < options.repetitions; ++rep) {
    const uint64_t rep_seed = DeriveSeed(seed, absl::StrCat("cv/", rep));
    const std::vector<int> fold = StratifiedFolds(train.labels, k, rep_seed);

    std::vector<std::array<size_t, 2>> valid_counts(k, {0, 0});
    std::array<size_t, 2> class_totals = {0, 0};
    for (size_t i = 0; i < train.rows; ++i) {
      ++valid_counts[fold[i]][train.labels[i]];
      ++class_totals[train.labels[i]];
    }
    bool degenerate = false;
    for (int f = 0; f < k; ++f) {
      for (int c = 0; c < 2; ++c) {
        if (class_totals[c] == 0) continue;
        if (valid_counts[f][c] == 0 || class_totals[c] - valid_counts[f][c] < 2) {
          degenerate = true;
        }
      }
    }
    if (degenerate) {
      result.flags.push_back(absl::StrCat("degenerate_folds_rep", rep));
      continue;
    }
    ++result.repetitions_used;
    for (int f = 0; f < k; ++f) {
      std::vector<size_t> fit_rows, valid_rows;
      for (size_t i = 0; i < train.rows; ++i) {
        (fold[i] == f ? valid_rows : fit_rows).push_back(i);
      }
      TRADEOFF_ASSIGN_OR_RETURN(
          std::vector<double> scores,
          ScoreGrid(train.Subset(fit_rows), train.Subset(valid_rows), grid,
                    DeriveSeed(rep_seed, static_cast<uint64_t>(f))));
      for (size_t g = 0; g < scores.size(); ++g) totals[g] += scores[g];
      ++evaluations;
    }
  }
  if (result.repetitions_used == 0) {
    return absl::FailedPreconditionError(
        "every cross-validation repetition had a fold missing a class");
  }

  result.mean_scores.resize(grid.points.size());
  for (size_t g = 0; g < totals.size(); ++g) {
    result.mean_scores[g] = totals[g] / static_cast<double>(evaluations);
  }
  size_t best = 0;
  for (size_t g = 1; g < grid.points.size(); ++g) {
    const double diff = result.mean_scores[g] - result.mean_scores[best];
    if (diff > kScoreTieTolerance ||
        (std::abs(diff) <= kScoreTieTolerance &&
         Cost(grid.kind, grid.points[g]) < Cost(grid.kind, grid.points[best]))) {
      best = g;
    }
  }
  result.best_index = best;
  TRADEOFF_ASSIGN_OR_RETURN(
      result.model, TrainLearner(train, grid.kind, grid.points[best],
                                 DeriveSeed(seed, "model")));
  result.model.cv_score = result.mean_scores[best];
  result.model.flags.insert(result.model.flags.end(), result.flags.begin(),
                            result.flags.end());
  return result;
}

}  // namespace tradeoff

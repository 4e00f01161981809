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

#ifndef TRADEOFF_LEARNING_GRID_SEARCH_H_
#define TRADEOFF_LEARNING_GRID_SEARCH_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "tradeoff/learning/feature_matrix.h"
#include "tradeoff/learning/fitted_model.h"

namespace tradeoff {

struct HyperGrid {
  LearnerKind kind = LearnerKind::kLogistic;
  std::vector<HyperParams> points;

  // RF: n_estimators {100, 250, 500} x max_depth {4, 7, 10}.
  // XGB: the same x learning_rate {0.1, 0.01}.
  // Logit: C {0.001, 1, 10000} x max_iter {1e6, 1e7}.
  // Points are listed with the first parameter varying slowest.
  static HyperGrid Default(LearnerKind kind);

  // Parameter lists keyed like HyperParams::ToJson; missing keys fall back
  // to the default lists.
  static absl::StatusOr<HyperGrid> FromJson(LearnerKind kind,
                                            const nlohmann::json& j);
};

// Trains one learner with fixed hyper-parameters. `seed` drives the
// forest's bootstrap and feature sampling; the other learners ignore it.
absl::StatusOr<FittedModel> TrainLearner(const FeatureMatrix& x,
                                         LearnerKind kind,
                                         const HyperParams& params,
                                         uint64_t seed);

// Fold id in [0, k) for each row. Classes are visited in increasing label
// order; each class's rows are shuffled with one shared stream and dealt
// round-robin, the dealing position carrying over from class to class.
std::vector<int> StratifiedFolds(std::span<const int> labels, int k,
                                 uint64_t seed);

struct CvOptions {
  int folds = 5;
  int repetitions = 2;
};

struct GridSearchResult {
  FittedModel model;               // refit on the full training matrix
  size_t best_index = 0;
  std::vector<double> mean_scores;  // mean CV accuracy per grid point
  int repetitions_used = 0;
  std::vector<std::string> flags;
};

// Repetition r shuffles with DeriveSeed(seed, "cv/<r>"). A repetition in
// which some validation fold misses a class, or some training part has
// fewer than two rows of a class, is skipped and flagged. The best mean
// accuracy wins; ties within 1e-12 go to fewer estimators (or iterations),
// then to the lower grid index. The refit uses DeriveSeed(seed, "model").
absl::StatusOr<GridSearchResult> GridSearch(const FeatureMatrix& train,
                                            const HyperGrid& grid,
                                            uint64_t seed,
                                            const CvOptions& options = {});

}  // namespace tradeoff

#endif  // TRADEOFF_LEARNING_GRID_SEARCH_H_

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

#ifndef TRADEOFF_DATA_SPLIT_H_
#define TRADEOFF_DATA_SPLIT_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "tradeoff/data/dataset.h"

namespace tradeoff {

struct Split {
  Dataset train;
  Dataset test;
  std::vector<size_t> train_rows;  // ascending source row indices
  std::vector<size_t> test_rows;
  uint64_t seed = 0;
  // False when some target class has fewer than two rows and the split fell
  // back to an unstratified shuffle.
  bool stratified = true;
};

// 80/20 train/test partition stratified on the target.
//
// Procedure, with one Rng seeded by `seed`:
//   1. n_train = round(0.8 n) (half rounds up).
//   2. Classes are visited in ascending label order. Each class's row
//      indices (ascending) are shuffled with Rng::Shuffle.
//   3. Class c receives floor(0.8 n_c) training rows; the remaining
//      n_train - sum floor(...) rows go one each to the classes with the
//      largest fractional part 0.8 n_c - floor(0.8 n_c), ties to the earlier
//      class.
//   4. The first quota of each shuffled class list is training data.
// The unstratified fallback shuffles 0..n-1 once and takes the first n_train.
// Both halves are returned in ascending source order.
absl::StatusOr<Split> SplitDataset(const Dataset& data, uint64_t seed);

}  // namespace tradeoff

#endif  // TRADEOFF_DATA_SPLIT_H_

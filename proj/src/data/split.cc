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

#include "tradeoff/data/split.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "tradeoff/common/random.h"

namespace tradeoff {

absl::StatusOr<Split> SplitDataset(const Dataset& data, uint64_t seed) {
  const size_t n = data.num_rows();
  if (n < 5) {
    return absl::InvalidArgumentError("split needs at least 5 rows");
  }
  // round(0.8 n) = floor((8n + 5) / 10)
  const size_t n_train = (8 * n + 5) / 10;

  std::map<std::string, std::vector<size_t>> by_class;
  const auto& labels = data.target().labels;
  for (size_t r = 0; r < n; ++r) by_class[labels[r]].push_back(r);
  const bool stratify =
      std::all_of(by_class.begin(), by_class.end(),
                  [](const auto& entry) { return entry.second.size() >= 2; });

  Rng rng(seed);
  Split split{data, data, {}, {}, seed, stratify};
  if (stratify) {
    std::vector<std::vector<size_t>> classes;
    std::vector<size_t> quota;
    std::vector<size_t> remainder;  // fractional part, in fifths
    size_t assigned = 0;
    for (auto& [label, rows] : by_class) {
      rng.Shuffle(rows);
      quota.push_back(4 * rows.size() / 5);
      remainder.push_back(4 * rows.size() % 5);
      assigned += quota.back();
      classes.push_back(rows);
    }
    std::vector<size_t> order(classes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return remainder[a] > remainder[b];
    });
    for (size_t i = 0; assigned < n_train && i < order.size(); ++i, ++assigned) {
      ++quota[order[i]];
    }
    for (size_t c = 0; c < classes.size(); ++c) {
      const auto& rows = classes[c];
      split.train_rows.insert(split.train_rows.end(), rows.begin(),
                              rows.begin() + quota[c]);
      split.test_rows.insert(split.test_rows.end(), rows.begin() + quota[c],
                             rows.end());
    }
  } else {
    std::vector<size_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    rng.Shuffle(rows);
    split.train_rows.assign(rows.begin(), rows.begin() + n_train);
    split.test_rows.assign(rows.begin() + n_train, rows.end());
  }
  std::sort(split.train_rows.begin(), split.train_rows.end());
  std::sort(split.test_rows.begin(), split.test_rows.end());
  split.train = data.SelectRows(split.train_rows);
  split.test = data.SelectRows(split.test_rows);
  return split;
}

}  // namespace tradeoff

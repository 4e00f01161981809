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

// PrivateSMOTE: replaces every single-out record (k = 1 over the
// quasi-identifiers) by `ratio` synthetic records interpolated towards one of
// its nearest neighbours, with bounded noise on numeric attributes.
//
// Recipe for a single-out x (target attribute excluded everywhere):
//   neighbours   the `knn` rows closest to x under the Gower distance (mean
//                over attributes of |a - b| / range for numeric attributes and
//                0/1 mismatch for categorical ones), ties by lower row index.
//                Every other training row is a candidate, single-outs
//                included.
//   per record   pick a neighbour n uniformly, draw w ~ U[0, 1); for each
//                attribute in schema order:
//                  numeric      x + w (n - x) + U[-eps s, eps s), s the
//                               attribute's population standard deviation in
//                               the training set. Attributes whose training
//                               values are all integers are rounded to the
//                               nearest integer inside the same bound.
//                  categorical  x's or n's value with probability 1/2 each.
//                The target is copied from x.
// Single-outs are processed in ascending row order from a single Rng seeded
// with `seed`. The output holds the kept rows in source order followed by the
// synthetic rows in generation order.

#ifndef TRADEOFF_PRIVACY_PRIVATE_SMOTE_H_
#define TRADEOFF_PRIVACY_PRIVATE_SMOTE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "tradeoff/data/dataset.h"
#include "tradeoff/privacy/variant.h"

namespace tradeoff {

struct PrivateSmoteParams {
  int ratio = 1;  // synthetic records per single-out
  int knn = 1;
  double noise_eps = 0.1;
  uint64_t seed = 0;
};

absl::Status ValidatePrivateSmoteParams(const PrivateSmoteParams& params);

// Stable identifier, e.g. "privatesmote_r2_k3_e0.3".
std::string PrivateSmoteVariantId(const PrivateSmoteParams& params);

// Mixed-type distance between two rows of `data`, target excluded.
double GowerDistance(const Dataset& data, size_t a, size_t b);

// Nearest neighbours of `queries`, nearest first, under GowerDistance.
struct NeighborTable {
  size_t k = 0;
  std::vector<size_t> queries;
  std::vector<std::vector<size_t>> neighbors;  // parallel to `queries`
};

NeighborTable ComputeNeighbors(const Dataset& data,
                               std::span<const size_t> queries, size_t k);

// `neighbors` may hold a precomputed table for the training set's
// single-outs with k >= params.knn; the knn nearest are its prefix, so a
// table built once with the largest knn serves a whole grid.
absl::StatusOr<SyntheticVariant> PrivateSmote(
    const Dataset& train, std::span<const std::string> quasi_identifiers,
    const PrivateSmoteParams& params, const NeighborTable* neighbors = nullptr);

// Cartesian product ratio x knn x eps in nested order; each combination gets
// a seed derived from `seed` and its variant id.
std::vector<PrivateSmoteParams> PrivateSmoteGrid(std::span<const int> ratios,
                                                 std::span<const int> knns,
                                                 std::span<const double> epsilons,
                                                 uint64_t seed);

}  // namespace tradeoff

#endif  // TRADEOFF_PRIVACY_PRIVATE_SMOTE_H_

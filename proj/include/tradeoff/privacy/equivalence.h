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

// k-anonymity bookkeeping over a set of quasi-identifiers.

#ifndef TRADEOFF_PRIVACY_EQUIVALENCE_H_
#define TRADEOFF_PRIVACY_EQUIVALENCE_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "tradeoff/data/dataset.h"

namespace tradeoff {

// Canonical text of a cell for exact matching. Numbers are rounded to six
// significant digits ("%.6g", with -0 folded to 0) so that values differing
// only by floating-point noise compare equal; labels are used verbatim.
std::string CanonicalCell(const Column& column, size_t row);

// One signature string per row: the canonical QI cells joined by '\x1f'.
absl::StatusOr<std::vector<std::string>> QiSignatures(
    const Dataset& data, std::span<const std::string> quasi_identifiers);

struct EquivalenceClassIndex {
  std::vector<std::string> quasi_identifiers;
  // Row indices of each class, ascending; classes ordered by first row.
  std::vector<std::vector<size_t>> classes;
  std::vector<size_t> class_of_row;
  std::vector<size_t> k;  // k[r] = size of row r's class
};

absl::StatusOr<EquivalenceClassIndex> IndexEquivalenceClasses(
    const Dataset& data, std::span<const std::string> quasi_identifiers);

// Rows with k = 1, ascending.
std::vector<size_t> SingleOuts(const EquivalenceClassIndex& index);

}  // namespace tradeoff

#endif  // TRADEOFF_PRIVACY_EQUIVALENCE_H_

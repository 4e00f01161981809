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

#include "tradeoff/privacy/equivalence.h"

#include <unordered_map>

#include "absl/strings/str_format.h"
#include "tradeoff/common/status_macros.h"

namespace tradeoff {

std::string CanonicalCell(const Column& column, size_t row) {
  if (!column.is_numeric()) return column.labels[row];
  double value = column.numbers[row];
  std::string text = absl::StrFormat("%.6g", value);
  if (text == "-0") text = "0";
  return text;
}

absl::StatusOr<std::vector<std::string>> QiSignatures(
    const Dataset& data, std::span<const std::string> quasi_identifiers) {
  if (quasi_identifiers.empty()) {
    return absl::InvalidArgumentError("quasi-identifier list is empty");
  }
  std::vector<size_t> columns;
  for (const std::string& name : quasi_identifiers) {
    TRADEOFF_ASSIGN_OR_RETURN(size_t index, data.ColumnIndex(name));
    columns.push_back(index);
  }
  std::vector<std::string> signatures(data.num_rows());
  for (size_t r = 0; r < data.num_rows(); ++r) {
    std::string& sig = signatures[r];
    for (size_t i = 0; i < columns.size(); ++i) {
      if (i > 0) sig.push_back('\x1f');
      sig += CanonicalCell(data.column(columns[i]), r);
    }
  }
  return signatures;
}

absl::StatusOr<EquivalenceClassIndex> IndexEquivalenceClasses(
    const Dataset& data, std::span<const std::string> quasi_identifiers) {
  TRADEOFF_ASSIGN_OR_RETURN(std::vector<std::string> signatures,
                            QiSignatures(data, quasi_identifiers));
  EquivalenceClassIndex index;
  index.quasi_identifiers.assign(quasi_identifiers.begin(),
                                 quasi_identifiers.end());
  index.class_of_row.resize(data.num_rows());
  std::unordered_map<std::string, size_t> class_ids;
  for (size_t r = 0; r < signatures.size(); ++r) {
    auto [it, inserted] = class_ids.emplace(signatures[r], index.classes.size());
    if (inserted) index.classes.emplace_back();
    index.classes[it->second].push_back(r);
    index.class_of_row[r] = it->second;
  }
  index.k.resize(data.num_rows());
  for (size_t r = 0; r < index.k.size(); ++r) {
    index.k[r] = index.classes[index.class_of_row[r]].size();
  }
  return index;
}

std::vector<size_t> SingleOuts(const EquivalenceClassIndex& index) {
  std::vector<size_t> rows;
  for (size_t r = 0; r < index.k.size(); ++r) {
    if (index.k[r] == 1) rows.push_back(r);
  }
  return rows;
}

}  // namespace tradeoff

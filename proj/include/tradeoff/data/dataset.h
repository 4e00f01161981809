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

// Tabular datasets with attribute roles.
//
// A Dataset is an immutable, column-oriented table. Every column is either
// numeric (finite doubles) or categorical (text labels) and carries a set of
// roles. Exactly one column is the target; it is always categorical. Every
// operation in this header returns a new Dataset and leaves its inputs
// untouched, so values can be shared freely between threads.

#ifndef TRADEOFF_DATA_DATASET_H_
#define TRADEOFF_DATA_DATASET_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace tradeoff {

enum class ColumnKind { kNumeric, kCategorical };

std::string_view ColumnKindName(ColumnKind kind);

enum class Role : uint8_t {
  kQuasiIdentifier = 1,
  kProtected = 2,
  kTarget = 4,
};

// A column can hold several roles at once (gender is often both a
// quasi-identifier and a protected attribute). No role means "other".
class RoleSet {
 public:
  RoleSet() = default;
  RoleSet(std::initializer_list<Role> roles) {
    for (Role r : roles) Add(r);
  }

  bool Has(Role role) const { return (bits_ & static_cast<uint8_t>(role)) != 0; }
  void Add(Role role) { bits_ |= static_cast<uint8_t>(role); }
  bool empty() const { return bits_ == 0; }

  friend bool operator==(RoleSet a, RoleSet b) { return a.bits_ == b.bits_; }

 private:
  uint8_t bits_ = 0;
};

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::kCategorical;
  RoleSet roles;
  std::vector<double> numbers;      // kNumeric only
  std::vector<std::string> labels;  // kCategorical only

  size_t size() const {
    return kind == ColumnKind::kNumeric ? numbers.size() : labels.size();
  }
  bool is_numeric() const { return kind == ColumnKind::kNumeric; }

  friend bool operator==(const Column&, const Column&) = default;
};

class Dataset {
 public:
  // Validates the invariants: equal column lengths, unique names, exactly
  // one categorical target, finite numbers.
  static absl::StatusOr<Dataset> Create(std::string name,
                                        std::vector<Column> columns,
                                        std::string positive_label);

  const std::string& name() const { return name_; }
  size_t num_rows() const { return columns_.empty() ? 0 : columns_[0].size(); }
  size_t num_columns() const { return columns_.size(); }
  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(size_t index) const { return columns_[index]; }

  std::optional<size_t> FindColumn(std::string_view name) const;
  absl::StatusOr<size_t> ColumnIndex(std::string_view name) const;

  size_t target_index() const { return target_index_; }
  const Column& target() const { return columns_[target_index_]; }
  // Target label counted as the positive class (label 1).
  const std::string& positive_label() const { return positive_label_; }
  // 1 where the target equals positive_label(), else 0.
  std::vector<int> BinaryTarget() const;

  std::vector<std::string> ColumnsWithRole(Role role) const;

  // Text form of one cell; numbers use the shortest round-trip format.
  std::string CellText(size_t row, size_t column) const;

  // New dataset with the given rows, in the given order (repeats allowed).
  Dataset SelectRows(std::span<const size_t> rows) const;
  // Rows of this dataset followed by the rows of `other`, which must share
  // the schema.
  absl::StatusOr<Dataset> Concatenate(const Dataset& other) const;
  // Same columns, roles and kinds in the same order.
  bool SameSchema(const Dataset& other) const;

  Dataset WithName(std::string name) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  Dataset() = default;

  std::string name_;
  std::vector<Column> columns_;
  std::string positive_label_;
  size_t target_index_ = 0;
};

enum class ThresholdDirection { kGreaterEqual, kGreater, kLessEqual, kLess };

// Maps a protected attribute onto {1 = privileged, 0 = unprivileged}.
// Either `privileged_values` (categorical form; with optional explicit
// `unprivileged_values`) or `threshold` + `direction` (numeric form) is set.
struct ProtectedBinarization {
  std::string attribute;
  std::vector<std::string> privileged_values;
  std::vector<std::string> unprivileged_values;  // empty: everything else
  std::optional<double> threshold;
  ThresholdDirection direction = ThresholdDirection::kGreaterEqual;
};

// Per-dataset schema configuration (JSON on disk):
//
//   {
//     "name": "adult",
//     "path": "../adult.csv",            relative to the config file
//     "target": "income-per-year",
//     "positive_class": ">50K",          optional
//     "quasi_identifiers": ["age", "race", ...],
//     "protected": [
//       {"attribute": "race", "privileged_values": ["White"]},
//       {"attribute": "age", "threshold": 25, "direction": ">="}
//     ],
//     "fairness_attribute": "race",      optional, default first protected
//     "categorical_overrides": {"education-num": "numeric"},
//     "missing_values": ["?", ""]        optional
//   }
struct DatasetConfig {
  std::string name;
  std::string path;
  std::string target;
  std::optional<std::string> positive_class;
  std::vector<std::string> quasi_identifiers;
  std::vector<ProtectedBinarization> protected_attributes;
  std::string fairness_attribute;
  std::map<std::string, ColumnKind> kind_overrides;
  std::vector<std::string> missing_values;
};

std::vector<std::string> DefaultMissingValues();

absl::StatusOr<DatasetConfig> ParseDatasetConfig(std::string_view json_text,
                                                 const std::string& base_dir);
absl::StatusOr<DatasetConfig> LoadDatasetConfig(const std::string& path);

// A column is categorical when it has a non-numeric value or at most this
// many distinct values, unless overridden.
inline constexpr size_t kMaxCategoricalLevels = 20;

// Reads a delimited file, drops rows with missing values, infers column
// kinds and attaches the configured roles.
absl::StatusOr<Dataset> LoadDataset(const std::string& source,
                                    const DatasetConfig& config);

// Reads a file that must carry exactly the columns of `schema` (in any
// order). Columns are realigned to the schema's order and parsed with its
// kinds. Rows with missing values are dropped.
absl::StatusOr<Dataset> LoadDatasetLike(const std::string& source,
                                        const Dataset& schema);

// Replaces the protected column by a binary categorical column with labels
// "1" (privileged) and "0".
absl::StatusOr<Dataset> BinarizeProtected(const Dataset& data,
                                          const ProtectedBinarization& rule);

// Applies every binarization listed in the config, in order.
absl::StatusOr<Dataset> BinarizeAllProtected(const Dataset& data,
                                             const DatasetConfig& config);

// Text form used when writing datasets back to disk.
absl::Status WriteDatasetCsv(const Dataset& data, const std::string& path);

// Digest of the full table contents (schema and cells).
uint64_t DatasetDigest(const Dataset& data);

}  // namespace tradeoff

#endif  // TRADEOFF_DATA_DATASET_H_

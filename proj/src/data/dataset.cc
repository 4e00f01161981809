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

#include "tradeoff/data/dataset.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <unordered_set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "json.hpp"
#include "tradeoff/common/csv.h"
#include "tradeoff/common/digest.h"
#include "tradeoff/common/status_macros.h"

namespace tradeoff {
namespace {

using json = nlohmann::json;

bool IsMissing(const std::string& cell, const std::vector<std::string>& tokens) {
  return std::find(tokens.begin(), tokens.end(), cell) != tokens.end();
}

bool Matches(double value, double threshold, ThresholdDirection direction) {
  switch (direction) {
    case ThresholdDirection::kGreaterEqual:
      return value >= threshold;
    case ThresholdDirection::kGreater:
      return value > threshold;
    case ThresholdDirection::kLessEqual:
      return value <= threshold;
    case ThresholdDirection::kLess:
      return value < threshold;
  }
  return false;
}

absl::StatusOr<ThresholdDirection> ParseDirection(const std::string& text) {
  if (text == ">=") return ThresholdDirection::kGreaterEqual;
  if (text == ">") return ThresholdDirection::kGreater;
  if (text == "<=") return ThresholdDirection::kLessEqual;
  if (text == "<") return ThresholdDirection::kLess;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown threshold direction '", text, "'"));
}

absl::StatusOr<ColumnKind> ParseKind(const std::string& text) {
  if (text == "numeric") return ColumnKind::kNumeric;
  if (text == "categorical") return ColumnKind::kCategorical;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown column kind '", text, "'"));
}

// Builds a typed column from text cells.
absl::StatusOr<Column> MakeColumn(std::string name, ColumnKind kind,
                                  RoleSet roles,
                                  const std::vector<std::string>& cells) {
  Column column{std::move(name), kind, roles, {}, {}};
  if (kind == ColumnKind::kCategorical) {
    column.labels = cells;
    return column;
  }
  column.numbers.reserve(cells.size());
  for (const std::string& cell : cells) {
    std::optional<double> value = ParseNumber(cell);
    if (!value) {
      return absl::InvalidArgumentError(absl::StrCat(
          "column '", column.name, "' is numeric but holds '", cell, "'"));
    }
    column.numbers.push_back(*value);
  }
  return column;
}

ColumnKind InferKind(const std::vector<std::string>& cells) {
  std::unordered_set<std::string> distinct;
  for (const std::string& cell : cells) {
    if (!ParseNumber(cell)) return ColumnKind::kCategorical;
    distinct.insert(cell);
  }
  return distinct.size() <= kMaxCategoricalLevels ? ColumnKind::kCategorical
                                                  : ColumnKind::kNumeric;
}

}  // namespace

std::string_view ColumnKindName(ColumnKind kind) {
  return kind == ColumnKind::kNumeric ? "numeric" : "categorical";
}

absl::StatusOr<Dataset> Dataset::Create(std::string name,
                                        std::vector<Column> columns,
                                        std::string positive_label) {
  if (columns.empty()) return absl::InvalidArgumentError("dataset has no columns");
  Dataset data;
  data.name_ = std::move(name);
  data.positive_label_ = std::move(positive_label);
  std::set<std::string> names;
  size_t targets = 0;
  const size_t rows = columns[0].size();
  for (size_t c = 0; c < columns.size(); ++c) {
    const Column& column = columns[c];
    if (!names.insert(column.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate column '", column.name, "'"));
    }
    if (column.size() != rows) {
      return absl::InvalidArgumentError(
          absl::StrCat("column '", column.name, "' has ", column.size(),
                       " rows, expected ", rows));
    }
    if (column.is_numeric() ? !column.labels.empty() : !column.numbers.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("column '", column.name, "' mixes value kinds"));
    }
    for (double v : column.numbers) {
      if (!std::isfinite(v)) {
        return absl::InvalidArgumentError(
            absl::StrCat("column '", column.name, "' has a non-finite value"));
      }
    }
    if (column.roles.Has(Role::kTarget)) {
      ++targets;
      data.target_index_ = c;
      if (column.is_numeric()) {
        return absl::InvalidArgumentError("target column must be categorical");
      }
    }
  }
  if (targets != 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected exactly one target column, found ", targets));
  }
  data.columns_ = std::move(columns);
  return data;
}

std::optional<size_t> Dataset::FindColumn(std::string_view name) const {
  for (size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c].name == name) return c;
  }
  return std::nullopt;
}

absl::StatusOr<size_t> Dataset::ColumnIndex(std::string_view name) const {
  std::optional<size_t> index = FindColumn(name);
  if (!index) {
    return absl::NotFoundError(absl::StrCat("no column named '", std::string(name), "'"));
  }
  return *index;
}

std::vector<int> Dataset::BinaryTarget() const {
  const Column& t = target();
  std::vector<int> out(t.labels.size());
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = t.labels[i] == positive_label_ ? 1 : 0;
  }
  return out;
}

std::vector<std::string> Dataset::ColumnsWithRole(Role role) const {
  std::vector<std::string> out;
  for (const Column& column : columns_) {
    if (column.roles.Has(role)) out.push_back(column.name);
  }
  return out;
}

std::string Dataset::CellText(size_t row, size_t column) const {
  const Column& col = columns_[column];
  return col.is_numeric() ? FormatNumber(col.numbers[row]) : col.labels[row];
}

Dataset Dataset::SelectRows(std::span<const size_t> rows) const {
  Dataset out;
  out.name_ = name_;
  out.positive_label_ = positive_label_;
  out.target_index_ = target_index_;
  out.columns_.reserve(columns_.size());
  for (const Column& column : columns_) {
    Column selected{column.name, column.kind, column.roles, {}, {}};
    if (column.is_numeric()) {
      selected.numbers.reserve(rows.size());
      for (size_t r : rows) selected.numbers.push_back(column.numbers[r]);
    } else {
      selected.labels.reserve(rows.size());
      for (size_t r : rows) selected.labels.push_back(column.labels[r]);
    }
    out.columns_.push_back(std::move(selected));
  }
  return out;
}

bool Dataset::SameSchema(const Dataset& other) const {
  if (columns_.size() != other.columns_.size()) return false;
  for (size_t c = 0; c < columns_.size(); ++c) {
    const Column& a = columns_[c];
    const Column& b = other.columns_[c];
    if (a.name != b.name || a.kind != b.kind || !(a.roles == b.roles)) {
      return false;
    }
  }
  return true;
}

absl::StatusOr<Dataset> Dataset::Concatenate(const Dataset& other) const {
  if (!SameSchema(other)) {
    return absl::InvalidArgumentError("cannot concatenate: schemas differ");
  }
  Dataset out = *this;
  for (size_t c = 0; c < columns_.size(); ++c) {
    Column& dst = out.columns_[c];
    const Column& src = other.columns_[c];
    dst.numbers.insert(dst.numbers.end(), src.numbers.begin(), src.numbers.end());
    dst.labels.insert(dst.labels.end(), src.labels.begin(), src.labels.end());
  }
  return out;
}

Dataset Dataset::WithName(std::string name) const {
  Dataset out = *this;
  out.name_ = std::move(name);
  return out;
}

std::vector<std::string> DefaultMissingValues() {
  return {"", "?", "NA", "N/A", "NaN", "nan", "null", "NULL"};
}

absl::StatusOr<DatasetConfig> ParseDatasetConfig(std::string_view json_text,
                                                 const std::string& base_dir) {
  DatasetConfig config;
  try {
    const json doc = json::parse(json_text);
    config.name = doc.value("name", std::string("dataset"));
    if (!doc.contains("path") || !doc.contains("target")) {
      return absl::InvalidArgumentError(
          "dataset config needs 'path' and 'target'");
    }
    std::filesystem::path path = doc.at("path").get<std::string>();
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    config.path = path.lexically_normal().string();
    config.target = doc.at("target").get<std::string>();
    if (doc.contains("positive_class")) {
      const json& positive = doc.at("positive_class");
      config.positive_class = positive.is_string() ? positive.get<std::string>()
                                                   : positive.dump();
    }
    config.quasi_identifiers =
        doc.value("quasi_identifiers", std::vector<std::string>{});
    for (const json& item : doc.value("protected", json::array())) {
      ProtectedBinarization rule;
      rule.attribute = item.at("attribute").get<std::string>();
      for (const json& v : item.value("privileged_values", json::array())) {
        rule.privileged_values.push_back(v.is_string() ? v.get<std::string>()
                                                       : v.dump());
      }
      for (const json& v : item.value("unprivileged_values", json::array())) {
        rule.unprivileged_values.push_back(v.is_string() ? v.get<std::string>()
                                                         : v.dump());
      }
      if (item.contains("threshold")) {
        rule.threshold = item.at("threshold").get<double>();
        TRADEOFF_ASSIGN_OR_RETURN(
            rule.direction,
            ParseDirection(item.value("direction", std::string(">="))));
      }
      if (rule.threshold.has_value() == !rule.privileged_values.empty()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "protected attribute '", rule.attribute,
            "' needs exactly one of privileged_values or threshold"));
      }
      config.protected_attributes.push_back(std::move(rule));
    }
    const json overrides = doc.value("categorical_overrides", json::object());
    for (const auto& [name, kind] : overrides.items()) {
      TRADEOFF_ASSIGN_OR_RETURN(config.kind_overrides[name],
                                ParseKind(kind.get<std::string>()));
    }
    config.missing_values =
        doc.value("missing_values", DefaultMissingValues());
    config.fairness_attribute = doc.value("fairness_attribute", std::string());
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed dataset config: ", e.what()));
  }
  if (config.quasi_identifiers.empty()) {
    return absl::InvalidArgumentError(
        "dataset config needs at least one quasi-identifier");
  }
  if (config.protected_attributes.empty()) {
    return absl::InvalidArgumentError(
        "dataset config needs at least one protected attribute");
  }
  if (config.fairness_attribute.empty()) {
    config.fairness_attribute = config.protected_attributes.front().attribute;
  }
  const bool listed = std::any_of(
      config.protected_attributes.begin(), config.protected_attributes.end(),
      [&](const ProtectedBinarization& p) {
        return p.attribute == config.fairness_attribute;
      });
  if (!listed) {
    return absl::InvalidArgumentError(absl::StrCat(
        "fairness_attribute '", config.fairness_attribute,
        "' is not a protected attribute"));
  }
  return config;
}

absl::StatusOr<DatasetConfig> LoadDatasetConfig(const std::string& path) {
  TRADEOFF_ASSIGN_OR_RETURN(std::string text, ReadTextFile(path));
  const std::string base =
      std::filesystem::path(path).parent_path().string();
  return ParseDatasetConfig(text, base);
}

absl::StatusOr<Dataset> LoadDataset(const std::string& source,
                                    const DatasetConfig& config) {
  TRADEOFF_ASSIGN_OR_RETURN(CsvTable table, ReadCsvFile(source));
  const std::vector<std::string>& header = table.header;
  auto has_column = [&](const std::string& name) {
    return std::find(header.begin(), header.end(), name) != header.end();
  };

  if (!has_column(config.target)) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing target column '", config.target, "'"));
  }
  std::map<std::string, RoleSet> roles;
  roles[config.target].Add(Role::kTarget);
  for (const std::string& qi : config.quasi_identifiers) {
    roles[qi].Add(Role::kQuasiIdentifier);
  }
  for (const ProtectedBinarization& p : config.protected_attributes) {
    roles[p.attribute].Add(Role::kProtected);
  }
  for (const auto& [name, unused] : roles) {
    if (!has_column(name)) {
      return absl::InvalidArgumentError(
          absl::StrCat("role assigned to nonexistent column '", name, "'"));
    }
  }
  for (const auto& [name, unused] : config.kind_overrides) {
    if (!has_column(name)) {
      return absl::InvalidArgumentError(
          absl::StrCat("kind override for nonexistent column '", name, "'"));
    }
  }

  // Listwise deletion.
  std::vector<std::vector<std::string>> cells(header.size());
  for (const auto& row : table.rows) {
    const bool complete = std::none_of(
        row.begin(), row.end(),
        [&](const std::string& c) { return IsMissing(c, config.missing_values); });
    if (!complete) continue;
    for (size_t c = 0; c < header.size(); ++c) cells[c].push_back(row[c]);
  }
  if (cells[0].empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": no complete rows after cleaning"));
  }

  std::vector<Column> columns;
  for (size_t c = 0; c < header.size(); ++c) {
    const std::string& name = header[c];
    const RoleSet role = roles.count(name) ? roles[name] : RoleSet{};
    ColumnKind kind = InferKind(cells[c]);
    if (auto it = config.kind_overrides.find(name);
        it != config.kind_overrides.end()) {
      kind = it->second;
    }
    if (role.Has(Role::kTarget)) kind = ColumnKind::kCategorical;
    TRADEOFF_ASSIGN_OR_RETURN(Column column,
                              MakeColumn(name, kind, role, cells[c]));
    columns.push_back(std::move(column));
  }

  const size_t target = std::distance(
      header.begin(), std::find(header.begin(), header.end(), config.target));
  std::string positive;
  if (config.positive_class) {
    positive = *config.positive_class;
    const auto& labels = columns[target].labels;
    if (std::find(labels.begin(), labels.end(), positive) == labels.end()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "positive class '", positive, "' does not occur in the target"));
    }
  } else {
    positive = *std::max_element(columns[target].labels.begin(),
                                 columns[target].labels.end());
  }
  return Dataset::Create(config.name, std::move(columns), std::move(positive));
}

absl::StatusOr<Dataset> LoadDatasetLike(const std::string& source,
                                        const Dataset& schema) {
  TRADEOFF_ASSIGN_OR_RETURN(CsvTable table, ReadCsvFile(source));
  if (table.header.size() != schema.num_columns()) {
    return absl::InvalidArgumentError(absl::StrCat(
        source, ": has ", table.header.size(), " columns, schema has ",
        schema.num_columns()));
  }
  std::vector<size_t> position(schema.num_columns());
  for (size_t c = 0; c < schema.num_columns(); ++c) {
    const std::string& name = schema.column(c).name;
    auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat(source, ": missing column '", name, "'"));
    }
    position[c] = std::distance(table.header.begin(), it);
  }
  const std::vector<std::string> missing = DefaultMissingValues();
  std::vector<std::vector<std::string>> cells(schema.num_columns());
  for (const auto& row : table.rows) {
    const bool complete = std::none_of(
        row.begin(), row.end(),
        [&](const std::string& c) { return IsMissing(c, missing); });
    if (!complete) continue;
    for (size_t c = 0; c < schema.num_columns(); ++c) {
      cells[c].push_back(row[position[c]]);
    }
  }
  std::vector<Column> columns;
  for (size_t c = 0; c < schema.num_columns(); ++c) {
    const Column& proto = schema.column(c);
    absl::StatusOr<Column> column =
        MakeColumn(proto.name, proto.kind, proto.roles, cells[c]);
    if (!column.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          source, ": kind mismatch: ", column.status().message()));
    }
    columns.push_back(*std::move(column));
  }
  return Dataset::Create(schema.name(), std::move(columns),
                         schema.positive_label());
}

absl::StatusOr<Dataset> BinarizeProtected(const Dataset& data,
                                          const ProtectedBinarization& rule) {
  TRADEOFF_ASSIGN_OR_RETURN(size_t index, data.ColumnIndex(rule.attribute));
  const Column& source = data.column(index);
  if (!source.roles.Has(Role::kProtected)) {
    return absl::FailedPreconditionError(
        absl::StrCat("column '", rule.attribute, "' is not protected"));
  }
  Column binary{source.name, ColumnKind::kCategorical, source.roles, {}, {}};
  binary.labels.reserve(data.num_rows());
  for (size_t r = 0; r < data.num_rows(); ++r) {
    bool privileged = false;
    if (rule.threshold) {
      std::optional<double> value =
          source.is_numeric() ? std::optional<double>(source.numbers[r])
                              : ParseNumber(source.labels[r]);
      if (!value) {
        return absl::InvalidArgumentError(absl::StrCat(
            "binarization of '", rule.attribute,
            "' is not total: non-numeric value '", source.labels[r], "'"));
      }
      privileged = Matches(*value, *rule.threshold, rule.direction);
    } else {
      const std::string text = data.CellText(r, index);
      auto in = [&](const std::vector<std::string>& set) {
        return std::find(set.begin(), set.end(), text) != set.end();
      };
      privileged = in(rule.privileged_values);
      if (!privileged && !rule.unprivileged_values.empty() &&
          !in(rule.unprivileged_values)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "binarization of '", rule.attribute,
            "' is not total: value '", text, "' is unmapped"));
      }
    }
    binary.labels.push_back(privileged ? "1" : "0");
  }
  std::vector<Column> columns = data.columns();
  columns[index] = std::move(binary);
  return Dataset::Create(data.name(), std::move(columns), data.positive_label());
}

absl::StatusOr<Dataset> BinarizeAllProtected(const Dataset& data,
                                             const DatasetConfig& config) {
  Dataset out = data;
  for (const ProtectedBinarization& rule : config.protected_attributes) {
    TRADEOFF_ASSIGN_OR_RETURN(out, BinarizeProtected(out, rule));
  }
  return out;
}

absl::Status WriteDatasetCsv(const Dataset& data, const std::string& path) {
  CsvTable table;
  for (const Column& column : data.columns()) table.header.push_back(column.name);
  table.rows.resize(data.num_rows());
  for (size_t r = 0; r < data.num_rows(); ++r) {
    table.rows[r].reserve(data.num_columns());
    for (size_t c = 0; c < data.num_columns(); ++c) {
      table.rows[r].push_back(data.CellText(r, c));
    }
  }
  return WriteCsvFile(path, table);
}

uint64_t DatasetDigest(const Dataset& data) {
  uint64_t hash = Fnv1a64(data.positive_label());
  for (size_t c = 0; c < data.num_columns(); ++c) {
    const Column& column = data.column(c);
    hash = Fnv1a64(absl::StrCat(column.name, "|", std::string(ColumnKindName(column.kind))),
                   hash);
    for (size_t r = 0; r < data.num_rows(); ++r) {
      hash = Fnv1a64(data.CellText(r, c), hash);
      hash = Fnv1a64("\x1f", hash);
    }
  }
  return hash;
}

}  // namespace tradeoff

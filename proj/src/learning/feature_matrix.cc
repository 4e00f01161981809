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

#include "tradeoff/learning/feature_matrix.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "absl/strings/str_cat.h"
#include "tradeoff/common/status_macros.h"

namespace tradeoff {

using json = nlohmann::json;

FeatureMatrix FeatureMatrix::Subset(std::span<const size_t> indices) const {
  FeatureMatrix out;
  out.rows = indices.size();
  out.cols = cols;
  out.numeric = numeric;
  out.values.reserve(out.rows * cols);
  for (size_t i : indices) {
    const auto r = row(i);
    out.values.insert(out.values.end(), r.begin(), r.end());
    if (!labels.empty()) out.labels.push_back(labels[i]);
    if (!weights.empty()) out.weights.push_back(weights[i]);
  }
  return out;
}

FeatureMatrix FeatureMatrix::WithWeights(std::vector<double> w) const {
  FeatureMatrix out = *this;
  out.weights = std::move(w);
  return out;
}

FeatureMatrix FeatureMatrix::WithLabels(std::vector<int> y) const {
  FeatureMatrix out = *this;
  out.labels = std::move(y);
  return out;
}

absl::StatusOr<FeatureEncoder> FeatureEncoder::Fit(const Dataset& train) {
  FeatureEncoder encoder;
  encoder.target_ = train.target().name;
  encoder.positive_label_ = train.positive_label();
  std::set<std::string> target_levels(train.target().labels.begin(),
                                      train.target().labels.end());
  if (target_levels.size() > 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "target '", encoder.target_, "' is not binary (",
        target_levels.size(), " classes)"));
  }
  size_t offset = 0;
  for (size_t c = 0; c < train.num_columns(); ++c) {
    if (c == train.target_index()) continue;
    const Column& column = train.column(c);
    Block block{column.name, column.kind, {}, offset};
    if (column.is_numeric()) {
      offset += 1;
    } else {
      std::set<std::string> levels(column.labels.begin(), column.labels.end());
      block.levels.assign(levels.begin(), levels.end());
      offset += block.levels.size();
    }
    encoder.blocks_.push_back(std::move(block));
  }
  encoder.num_features_ = offset;
  return encoder;
}

absl::StatusOr<FeatureMatrix> FeatureEncoder::Transform(const Dataset& data) const {
  FeatureMatrix x;
  x.rows = data.num_rows();
  x.cols = num_features_;
  x.values.assign(x.rows * x.cols, 0.0);
  x.numeric.assign(x.cols, false);
  for (const Block& block : blocks_) {
    absl::StatusOr<size_t> index = data.ColumnIndex(block.column);
    if (!index.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("encoder: data lacks column '", block.column, "'"));
    }
    const Column& column = data.column(*index);
    if (column.kind != block.kind) {
      return absl::InvalidArgumentError(
          absl::StrCat("encoder: column '", block.column, "' changed kind"));
    }
    if (block.kind == ColumnKind::kNumeric) {
      x.numeric[block.offset] = true;
      for (size_t r = 0; r < x.rows; ++r) {
        x.values[r * x.cols + block.offset] = column.numbers[r];
      }
      continue;
    }
    for (size_t r = 0; r < x.rows; ++r) {
      auto it = std::lower_bound(block.levels.begin(), block.levels.end(),
                                 column.labels[r]);
      if (it != block.levels.end() && *it == column.labels[r]) {
        x.values[r * x.cols + block.offset + (it - block.levels.begin())] = 1.0;
      }
    }
  }
  if (std::optional<size_t> t = data.FindColumn(target_)) {
    const Column& target = data.column(*t);
    if (target.is_numeric()) {
      return absl::InvalidArgumentError("encoder: target must be categorical");
    }
    std::set<std::string> levels(target.labels.begin(), target.labels.end());
    levels.insert(positive_label_);
    if (levels.size() > 2) {
      return absl::InvalidArgumentError(
          absl::StrCat("target '", target_, "' is not binary"));
    }
    x.labels.reserve(x.rows);
    for (const std::string& label : target.labels) {
      x.labels.push_back(label == positive_label_ ? 1 : 0);
    }
  }
  return x;
}

std::vector<std::string> FeatureEncoder::FeatureNames() const {
  std::vector<std::string> names;
  for (const Block& block : blocks_) {
    if (block.kind == ColumnKind::kNumeric) {
      names.push_back(block.column);
    } else {
      for (const std::string& level : block.levels) {
        names.push_back(absl::StrCat(block.column, "=", level));
      }
    }
  }
  return names;
}

json FeatureEncoder::ToJson() const {
  json blocks = json::array();
  for (const Block& block : blocks_) {
    blocks.push_back({{"column", block.column},
                      {"kind", std::string(ColumnKindName(block.kind))},
                      {"levels", block.levels}});
  }
  return {{"target", target_},
          {"positive_label", positive_label_},
          {"blocks", blocks}};
}

absl::StatusOr<FeatureEncoder> FeatureEncoder::FromJson(const json& j) {
  FeatureEncoder encoder;
  try {
    encoder.target_ = j.at("target").get<std::string>();
    encoder.positive_label_ = j.at("positive_label").get<std::string>();
    size_t offset = 0;
    for (const json& b : j.at("blocks")) {
      Block block;
      block.column = b.at("column").get<std::string>();
      block.kind = b.at("kind").get<std::string>() == "numeric"
                       ? ColumnKind::kNumeric
                       : ColumnKind::kCategorical;
      block.levels = b.at("levels").get<std::vector<std::string>>();
      block.offset = offset;
      offset += block.kind == ColumnKind::kNumeric ? 1 : block.levels.size();
      encoder.blocks_.push_back(std::move(block));
    }
    encoder.num_features_ = offset;
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("encoder record: ", e.what()));
  }
  return encoder;
}

Standardizer Standardizer::Fit(const FeatureMatrix& x) {
  Standardizer s;
  s.mean.assign(x.cols, 0.0);
  s.scale.assign(x.cols, 1.0);
  double total = 0.0;
  for (size_t i = 0; i < x.rows; ++i) total += x.weight(i);
  if (!(total > 0.0)) return s;
  for (size_t j = 0; j < x.cols; ++j) {
    if (j >= x.numeric.size() || !x.numeric[j]) continue;
    double mean = 0.0;
    for (size_t i = 0; i < x.rows; ++i) mean += x.weight(i) * x.at(i, j);
    mean /= total;
    double ss = 0.0;
    for (size_t i = 0; i < x.rows; ++i) {
      const double d = x.at(i, j) - mean;
      ss += x.weight(i) * d * d;
    }
    const double sd = std::sqrt(ss / total);
    s.mean[j] = mean;
    s.scale[j] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

FeatureMatrix Standardizer::Apply(const FeatureMatrix& x) const {
  FeatureMatrix out = x;
  for (size_t i = 0; i < x.rows; ++i) {
    ApplyRow(x.row(i), {out.values.data() + i * x.cols, x.cols});
  }
  return out;
}

void Standardizer::ApplyRow(std::span<const double> in,
                            std::span<double> out) const {
  for (size_t j = 0; j < in.size(); ++j) out[j] = (in[j] - mean[j]) / scale[j];
}

absl::StatusOr<std::vector<int>> GroupMembership(const Dataset& data,
                                                 std::string_view attribute) {
  TRADEOFF_ASSIGN_OR_RETURN(size_t index, data.ColumnIndex(attribute));
  const Column& column = data.column(index);
  if (column.is_numeric()) {
    return absl::FailedPreconditionError(
        absl::StrCat("protected attribute '", std::string(attribute), "' is not binarized"));
  }
  std::vector<int> groups;
  groups.reserve(column.labels.size());
  for (const std::string& label : column.labels) {
    if (label != "0" && label != "1") {
      return absl::FailedPreconditionError(absl::StrCat(
          "protected attribute '", std::string(attribute), "' holds '", label,
          "'; binarize it first"));
    }
    groups.push_back(label == "1" ? 1 : 0);
  }
  return groups;
}

absl::StatusOr<EncodedSplit> Encode(const Dataset& train, const Dataset& test,
                                    std::string_view protected_attribute) {
  if (!train.SameSchema(test)) {
    return absl::InvalidArgumentError("train and test schemas differ");
  }
  EncodedSplit out;
  TRADEOFF_ASSIGN_OR_RETURN(out.encoder, FeatureEncoder::Fit(train));
  TRADEOFF_ASSIGN_OR_RETURN(out.train, out.encoder.Transform(train));
  TRADEOFF_ASSIGN_OR_RETURN(out.test, out.encoder.Transform(test));
  TRADEOFF_ASSIGN_OR_RETURN(out.train_groups,
                            GroupMembership(train, protected_attribute));
  TRADEOFF_ASSIGN_OR_RETURN(out.test_groups,
                            GroupMembership(test, protected_attribute));
  return out;
}

}  // namespace tradeoff

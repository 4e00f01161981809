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

#include "tradeoff/privacy/variant.h"

#include <algorithm>
#include <filesystem>

#include "absl/strings/str_cat.h"
#include "tradeoff/common/csv.h"
#include "tradeoff/common/status_macros.h"
#include "tradeoff/privacy/equivalence.h"

namespace tradeoff {
namespace {

using json = nlohmann::json;

json SidecarJson(const SyntheticVariant& v) {
  return json{{"variant_id", v.id},
              {"method", v.provenance.method},
              {"family", v.provenance.family},
              {"parameters", v.provenance.parameters},
              {"seed", v.provenance.seed},
              {"source_dataset", v.provenance.source_dataset},
              {"source_variant", v.provenance.source_variant},
              {"synthetic_begin", v.synthetic_begin},
              {"replaced_rows", v.replaced_rows},
              {"flags", v.flags}};
}

}  // namespace

bool SyntheticVariant::HasFlag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

std::string SidecarPath(const std::string& csv_path) {
  return std::filesystem::path(csv_path).replace_extension(".json").string();
}

absl::StatusOr<SyntheticVariant> ImportVariant(
    const Dataset& train, std::span<const std::string> quasi_identifiers,
    const std::string& file, const json& provenance) {
  absl::StatusOr<Dataset> rows = LoadDatasetLike(file, train);
  if (!rows.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("schema mismatch: ", rows.status().message()));
  }
  TRADEOFF_ASSIGN_OR_RETURN(EquivalenceClassIndex index,
                            IndexEquivalenceClasses(train, quasi_identifiers));
  SyntheticVariant variant{
      .id = std::filesystem::path(file).stem().string(),
      .data = *std::move(rows),
      .provenance = {},
      .replaced_rows = SingleOuts(index),
      .synthetic_begin = 0,
      .flags = {},
      .sources = {}};
  variant.provenance.method = kImportedMethod;
  variant.provenance.family =
      provenance.is_object() && provenance.contains("family")
          ? provenance.at("family").get<std::string>()
          : std::string(kImportedMethod);
  variant.provenance.parameters =
      provenance.is_object() && provenance.contains("parameters")
          ? provenance.at("parameters")
          : provenance;
  if (provenance.is_object() && provenance.contains("seed")) {
    variant.provenance.seed = provenance.at("seed").get<uint64_t>();
  }
  variant.provenance.source_dataset = train.name();
  variant.provenance.source_variant = file;
  return variant;
}

absl::Status WriteVariant(const SyntheticVariant& variant,
                          const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create ", dir, ": ", ec.message()));
  }
  const std::string csv = (std::filesystem::path(dir) / (variant.id + ".csv")).string();
  TRADEOFF_RETURN_IF_ERROR(WriteDatasetCsv(variant.data, csv));
  return WriteTextFile(SidecarPath(csv), SidecarJson(variant).dump(2) + "\n");
}

absl::StatusOr<SyntheticVariant> ReadVariant(
    const Dataset& train, std::span<const std::string> quasi_identifiers,
    const std::string& file) {
  json sidecar = json::object();
  const std::string sidecar_path = SidecarPath(file);
  if (std::filesystem::exists(sidecar_path)) {
    TRADEOFF_ASSIGN_OR_RETURN(std::string text, ReadTextFile(sidecar_path));
    try {
      sidecar = json::parse(text);
    } catch (const json::exception& e) {
      return absl::InvalidArgumentError(
          absl::StrCat(sidecar_path, ": ", e.what()));
    }
  }
  TRADEOFF_ASSIGN_OR_RETURN(
      SyntheticVariant variant,
      ImportVariant(train, quasi_identifiers, file, sidecar));
  if (sidecar.value("method", std::string()) != kPrivateSmoteMethod) {
    return variant;
  }
  try {
    variant.id = sidecar.value("variant_id", variant.id);
    variant.provenance.method = kPrivateSmoteMethod;
    variant.provenance.source_dataset =
        sidecar.value("source_dataset", train.name());
    variant.provenance.source_variant.clear();
    variant.synthetic_begin = sidecar.at("synthetic_begin").get<size_t>();
    variant.replaced_rows =
        sidecar.at("replaced_rows").get<std::vector<size_t>>();
    variant.flags = sidecar.value("flags", std::vector<std::string>{});
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat(sidecar_path, ": ", e.what()));
  }
  if (variant.synthetic_begin > variant.data.num_rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat(sidecar_path, ": synthetic_begin beyond the data"));
  }
  return variant;
}

}  // namespace tradeoff

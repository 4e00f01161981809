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

#ifndef TRADEOFF_PRIVACY_VARIANT_H_
#define TRADEOFF_PRIVACY_VARIANT_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "tradeoff/data/dataset.h"

namespace tradeoff {

inline constexpr char kPrivateSmoteMethod[] = "PrivateSMOTE";
inline constexpr char kImportedMethod[] = "Imported";

struct VariantProvenance {
  std::string method;  // kPrivateSmoteMethod or kImportedMethod
  // Synthesizer family used to group solutions in reports. PrivateSMOTE for
  // native variants; for imports the sidecar's "family" (CTGAN, TVAE, ...).
  std::string family;
  nlohmann::json parameters = nlohmann::json::object();
  uint64_t seed = 0;
  std::string source_dataset;
  std::string source_variant;  // imports: the file the rows came from
};

// A privacy-protected derivative of a training set.
struct SyntheticVariant {
  std::string id;
  Dataset data;
  VariantProvenance provenance;
  // Single-out rows of the source training set that the variant replaces.
  std::vector<size_t> replaced_rows;
  // Rows [synthetic_begin, data.num_rows()) are synthetic. Imported files
  // are treated as fully synthetic.
  size_t synthetic_begin = 0;
  std::vector<std::string> flags;
  // PrivateSMOTE only: (single-out, neighbour) source rows per synthetic row.
  std::vector<std::pair<size_t, size_t>> sources;

  size_t num_synthetic() const { return data.num_rows() - synthetic_begin; }
  bool HasFlag(std::string_view flag) const;
};

// Wraps an externally generated file as a variant of `train`. Columns are
// realigned by name; a file whose column names or kinds differ from the
// training set is rejected.
absl::StatusOr<SyntheticVariant> ImportVariant(
    const Dataset& train, std::span<const std::string> quasi_identifiers,
    const std::string& file, const nlohmann::json& provenance);

// Writes <dir>/<id>.csv and the provenance sidecar <dir>/<id>.json.
absl::Status WriteVariant(const SyntheticVariant& variant,
                          const std::string& dir);

// Reads a variant file written by WriteVariant, or any file with the
// training schema (then treated as an import; a sidecar with the same stem
// supplies provenance when present).
absl::StatusOr<SyntheticVariant> ReadVariant(
    const Dataset& train, std::span<const std::string> quasi_identifiers,
    const std::string& file);

std::string SidecarPath(const std::string& csv_path);

}  // namespace tradeoff

#endif  // TRADEOFF_PRIVACY_VARIANT_H_

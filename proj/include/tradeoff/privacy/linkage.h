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

#ifndef TRADEOFF_PRIVACY_LINKAGE_H_
#define TRADEOFF_PRIVACY_LINKAGE_H_

#include <span>
#include <string>

#include "absl/status/statusor.h"
#include "tradeoff/data/dataset.h"
#include "tradeoff/privacy/variant.h"

namespace tradeoff {

struct LinkageRisk {
  // Original single-outs whose full QI signature appears among the
  // variant's synthetic rows. Each single-out counts at most once.
  size_t matches = 0;
  size_t single_outs = 0;
  double at_risk_fraction = 0.0;  // matches / single_outs, 0 without any
};

// Exact-match record linkage between the single-outs of the original
// training set and the synthetic rows of a variant.
absl::StatusOr<LinkageRisk> ComputeLinkageRisk(
    const Dataset& original_train, const SyntheticVariant& variant,
    std::span<const std::string> quasi_identifiers);

}  // namespace tradeoff

#endif  // TRADEOFF_PRIVACY_LINKAGE_H_

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

#include "tradeoff/privacy/linkage.h"

#include <unordered_set>

#include "absl/strings/str_cat.h"
#include "tradeoff/common/status_macros.h"
#include "tradeoff/privacy/equivalence.h"

namespace tradeoff {

absl::StatusOr<LinkageRisk> ComputeLinkageRisk(
    const Dataset& original_train, const SyntheticVariant& variant,
    std::span<const std::string> quasi_identifiers) {
  for (const std::string& name : quasi_identifiers) {
    TRADEOFF_ASSIGN_OR_RETURN(size_t a, original_train.ColumnIndex(name));
    TRADEOFF_ASSIGN_OR_RETURN(size_t b, variant.data.ColumnIndex(name));
    if (original_train.column(a).kind != variant.data.column(b).kind) {
      return absl::InvalidArgumentError(
          absl::StrCat("quasi-identifier '", name, "' differs in kind"));
    }
  }
  TRADEOFF_ASSIGN_OR_RETURN(
      EquivalenceClassIndex index,
      IndexEquivalenceClasses(original_train, quasi_identifiers));
  TRADEOFF_ASSIGN_OR_RETURN(std::vector<std::string> original,
                            QiSignatures(original_train, quasi_identifiers));
  TRADEOFF_ASSIGN_OR_RETURN(std::vector<std::string> synthetic,
                            QiSignatures(variant.data, quasi_identifiers));

  std::unordered_set<std::string> released(
      synthetic.begin() + static_cast<std::ptrdiff_t>(variant.synthetic_begin),
      synthetic.end());
  LinkageRisk risk;
  for (size_t r : SingleOuts(index)) {
    ++risk.single_outs;
    if (released.count(original[r])) ++risk.matches;
  }
  risk.at_risk_fraction =
      risk.single_outs == 0
          ? 0.0
          : static_cast<double>(risk.matches) / static_cast<double>(risk.single_outs);
  return risk;
}

}  // namespace tradeoff

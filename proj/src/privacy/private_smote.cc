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

#include "tradeoff/privacy/private_smote.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "absl/strings/str_cat.h"
#include "tradeoff/common/csv.h"
#include "tradeoff/common/random.h"
#include "tradeoff/common/status_macros.h"
#include "tradeoff/privacy/equivalence.h"

namespace tradeoff {
namespace {

// Column data prepared for repeated distance evaluation.
struct GowerView {
  struct Attribute {
    bool numeric;
    const std::vector<double>* values = nullptr;  // numeric
    double range = 0.0;
    std::vector<uint32_t> codes;  // categorical
  };
  std::vector<Attribute> attributes;

  explicit GowerView(const Dataset& data) {
    for (size_t c = 0; c < data.num_columns(); ++c) {
      if (c == data.target_index()) continue;
      const Column& column = data.column(c);
      Attribute attr{column.is_numeric(), nullptr, 0.0, {}};
      if (attr.numeric) {
        attr.values = &column.numbers;
        if (!column.numbers.empty()) {
          auto [lo, hi] = std::minmax_element(column.numbers.begin(),
                                              column.numbers.end());
          attr.range = *hi - *lo;
        }
      } else {
        std::unordered_map<std::string_view, uint32_t> ids;
        attr.codes.reserve(column.labels.size());
        for (const std::string& label : column.labels) {
          auto [it, unused] = ids.emplace(label, ids.size());
          attr.codes.push_back(it->second);
        }
      }
      attributes.push_back(std::move(attr));
    }
  }

  double Distance(size_t a, size_t b) const {
    if (attributes.empty()) return 0.0;
    double sum = 0.0;
    for (const Attribute& attr : attributes) {
      if (attr.numeric) {
        if (attr.range > 0.0) {
          sum += std::abs((*attr.values)[a] - (*attr.values)[b]) / attr.range;
        }
      } else if (attr.codes[a] != attr.codes[b]) {
        sum += 1.0;
      }
    }
    return sum / static_cast<double>(attributes.size());
  }
};

double PopulationStdDev(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

bool AllIntegers(const std::vector<double>& values) {
  return std::all_of(values.begin(), values.end(), [](double v) {
    return std::abs(v) < 1e15 && v == std::floor(v);
  });
}

}  // namespace

absl::Status ValidatePrivateSmoteParams(const PrivateSmoteParams& params) {
  if (params.ratio < 1) return absl::InvalidArgumentError("ratio must be >= 1");
  if (params.knn < 1) return absl::InvalidArgumentError("knn must be >= 1");
  if (!(params.noise_eps > 0.0) || !std::isfinite(params.noise_eps)) {
    return absl::InvalidArgumentError("noise_eps must be > 0");
  }
  return absl::OkStatus();
}

std::string PrivateSmoteVariantId(const PrivateSmoteParams& params) {
  return absl::StrCat("privatesmote_r", params.ratio, "_k", params.knn, "_e",
                      FormatNumber(params.noise_eps));
}

double GowerDistance(const Dataset& data, size_t a, size_t b) {
  return GowerView(data).Distance(a, b);
}

NeighborTable ComputeNeighbors(const Dataset& data,
                               std::span<const size_t> queries, size_t k) {
  const GowerView view(data);
  const size_t n = data.num_rows();
  NeighborTable table;
  table.k = k;
  table.queries.assign(queries.begin(), queries.end());
  table.neighbors.reserve(queries.size());
  std::vector<std::pair<double, size_t>> candidates;
  candidates.reserve(n);
  for (size_t q : queries) {
    candidates.clear();
    for (size_t r = 0; r < n; ++r) {
      if (r != q) candidates.emplace_back(view.Distance(q, r), r);
    }
    const size_t take = std::min(k, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + take,
                      candidates.end());
    std::vector<size_t> nearest;
    nearest.reserve(take);
    for (size_t i = 0; i < take; ++i) nearest.push_back(candidates[i].second);
    table.neighbors.push_back(std::move(nearest));
  }
  return table;
}

absl::StatusOr<SyntheticVariant> PrivateSmote(
    const Dataset& train, std::span<const std::string> quasi_identifiers,
    const PrivateSmoteParams& params, const NeighborTable* neighbors) {
  TRADEOFF_RETURN_IF_ERROR(ValidatePrivateSmoteParams(params));
  TRADEOFF_ASSIGN_OR_RETURN(EquivalenceClassIndex index,
                            IndexEquivalenceClasses(train, quasi_identifiers));
  const std::vector<size_t> single_outs = SingleOuts(index);

  SyntheticVariant variant{.id = PrivateSmoteVariantId(params),
                           .data = train,
                           .provenance = {},
                           .replaced_rows = single_outs,
                           .synthetic_begin = 0,
                           .flags = {},
                           .sources = {}};
  variant.provenance.method = kPrivateSmoteMethod;
  variant.provenance.family = kPrivateSmoteMethod;
  variant.provenance.parameters = {{"ratio", params.ratio},
                                   {"knn", params.knn},
                                   {"eps", params.noise_eps}};
  variant.provenance.seed = params.seed;
  variant.provenance.source_dataset = train.name();

  if (single_outs.empty()) {
    variant.synthetic_begin = train.num_rows();
    variant.flags.push_back("no_single_outs");
    return variant;
  }

  const size_t k = static_cast<size_t>(params.knn);
  NeighborTable computed;
  if (neighbors == nullptr || neighbors->k < k ||
      neighbors->queries != single_outs) {
    computed = ComputeNeighbors(train, single_outs, k);
    neighbors = &computed;
  }
  if (train.num_rows() < k + 1) variant.flags.push_back("insufficient_neighbors");

  const size_t columns = train.num_columns();
  std::vector<double> noise_scale(columns, 0.0);
  std::vector<bool> integral(columns, false);
  for (size_t c = 0; c < columns; ++c) {
    const Column& column = train.column(c);
    if (!column.is_numeric()) continue;
    noise_scale[c] = params.noise_eps * PopulationStdDev(column.numbers);
    integral[c] = AllIntegers(column.numbers);
  }

  std::vector<Column> out(train.columns().size());
  for (size_t c = 0; c < columns; ++c) {
    const Column& src = train.column(c);
    out[c] = Column{src.name, src.kind, src.roles, {}, {}};
  }
  std::vector<bool> removed(train.num_rows(), false);
  for (size_t r : single_outs) removed[r] = true;
  for (size_t r = 0; r < train.num_rows(); ++r) {
    if (removed[r]) continue;
    for (size_t c = 0; c < columns; ++c) {
      const Column& src = train.column(c);
      if (src.is_numeric()) {
        out[c].numbers.push_back(src.numbers[r]);
      } else {
        out[c].labels.push_back(src.labels[r]);
      }
    }
  }
  const size_t kept = train.num_rows() - single_outs.size();

  Rng rng(params.seed);
  for (size_t s = 0; s < single_outs.size(); ++s) {
    const size_t x = single_outs[s];
    const std::vector<size_t>& pool = neighbors->neighbors[s];
    const size_t available = std::min(k, pool.size());
    if (available == 0) {
      return absl::FailedPreconditionError(
          "PrivateSMOTE needs at least two training rows");
    }
    for (int j = 0; j < params.ratio; ++j) {
      const size_t nn = pool[rng.UniformInt(available)];
      const double w = rng.UniformDouble();
      variant.sources.emplace_back(x, nn);
      for (size_t c = 0; c < columns; ++c) {
        const Column& src = train.column(c);
        if (c == train.target_index()) {
          out[c].labels.push_back(src.labels[x]);
        } else if (src.is_numeric()) {
          const double a = src.numbers[x];
          const double b = src.numbers[nn];
          const double bound = noise_scale[c];
          const double lo = std::min(a, b) - bound;
          const double hi = std::max(a, b) + bound;
          double v = a + w * (b - a) + rng.Uniform(-bound, bound);
          if (integral[c]) {
            v = std::round(v);
            if (v < lo) v = std::ceil(lo);
            if (v > hi) v = std::floor(hi);
          }
          out[c].numbers.push_back(std::clamp(v, lo, hi));
        } else {
          const bool keep_own = rng.UniformDouble() < 0.5;
          out[c].labels.push_back(keep_own ? src.labels[x] : src.labels[nn]);
        }
      }
    }
  }
  TRADEOFF_ASSIGN_OR_RETURN(
      variant.data,
      Dataset::Create(train.name(), std::move(out), train.positive_label()));
  variant.synthetic_begin = kept;
  return variant;
}

std::vector<PrivateSmoteParams> PrivateSmoteGrid(std::span<const int> ratios,
                                                 std::span<const int> knns,
                                                 std::span<const double> epsilons,
                                                 uint64_t seed) {
  std::vector<PrivateSmoteParams> grid;
  for (int ratio : ratios) {
    for (int knn : knns) {
      for (double eps : epsilons) {
        PrivateSmoteParams params{ratio, knn, eps, 0};
        params.seed = DeriveSeed(seed, PrivateSmoteVariantId(params));
        grid.push_back(params);
      }
    }
  }
  return grid;
}

}  // namespace tradeoff

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

#include "tradeoff/learning/decision_tree.h"

#include <algorithm>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "tradeoff/common/random.h"

namespace tradeoff {
namespace {

using json = nlohmann::json;

double Midpoint(double a, double b) {
  const double mid = a + (b - a) / 2.0;
  return mid < b ? mid : a;
}

enum class Criterion { kGini, kSquaredError };

// SplitMix64 counter stream; cheap enough to create at every node.
class NodeStream {
 public:
  explicit NodeStream(uint64_t seed) : state_(seed) {}

  // Uniform on {0, ..., n - 1}, by rejection.
  size_t Below(size_t n) {
    const uint64_t threshold = (0 - static_cast<uint64_t>(n)) % n;
    while (true) {
      state_ += 0x9e3779b97f4a7c15ULL;
      const uint64_t x = MixBits(state_);
      if (x >= threshold) return static_cast<size_t>(x % n);
    }
  }

 private:
  uint64_t state_;
};

class Grower {
 public:
  Grower(const BinnedMatrix& x, Criterion criterion,
         std::span<const double> target, std::span<const double> weights,
         std::span<const double> hessian, const TreeOptions& options)
      : x_(x),
        criterion_(criterion),
        target_(target),
        weights_(weights),
        hessian_(hessian),
        options_(options),
        bin_weight_(kMaxBins + 1),
        bin_sum_(kMaxBins + 1) {
    row_weight_.resize(x.rows());
    row_sum_.resize(x.rows());
    for (size_t i = 0; i < x.rows(); ++i) {
      row_weight_[i] = weight(i);
      row_sum_[i] = weight(i) * target_[i];
      if (weight(i) > 0.0) rows_.push_back(i);
    }
    scratch_.resize(rows_.size());
    order_.resize(x.cols());
  }

  Tree Run() {
    if (!rows_.empty()) Grow(0, rows_.size(), 0, 1);
    return Tree(std::move(nodes_));
  }

 private:
  double weight(size_t i) const { return weights_.empty() ? 1.0 : weights_[i]; }

  // Parent-side term of the gain numerator for a (weight, sum) pair.
  double Term(double w, double s) const {
    if (criterion_ == Criterion::kGini) return s * (w - s) / w;
    return s * s / w;
  }

  int Grow(size_t begin, size_t end, int depth, uint64_t heap_id) {
    double w = 0.0, s = 0.0, h = 0.0;
    bool uniform = true;
    for (size_t k = begin; k < end; ++k) {
      const size_t i = rows_[k];
      w += row_weight_[i];
      s += row_sum_[i];
      if (!hessian_.empty()) h += hessian_[i];
      if (target_[i] != target_[rows_[begin]]) uniform = false;
    }
    TreeNode node;
    node.depth = depth;
    node.weight = w;
    if (criterion_ == Criterion::kGini || hessian_.empty()) {
      node.value = s / w;
    } else {
      node.value = h > 1e-150 ? s / h : 0.0;
    }
    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    if (depth >= options_.max_depth || end - begin < 2 || uniform) return index;

    const size_t p = x_.cols();
    std::iota(order_.begin(), order_.end(), 0);
    size_t budget = p;
    const bool sampled = options_.max_features > 0 && options_.max_features < p;
    NodeStream stream(DeriveSeed(options_.seed, heap_id));
    if (sampled) budget = options_.max_features;

    // Gini gain = 2 * (Term(parent) - Term(left) - Term(right)) / w;
    // squared error gain = (Term(left) + Term(right) - Term(parent)) / w.
    const double parent = Term(w, s);
    double best_gain = 0.0;
    int best_feature = -1;
    size_t best_bin = 0;
    size_t best_next = 0;
    bool any_nonconstant = false;
    for (size_t k = 0; k < p; ++k) {
      if (k >= budget && any_nonconstant) break;
      if (sampled) std::swap(order_[k], order_[k + stream.Below(p - k)]);
      const size_t f = order_[k];
      const uint8_t* codes = x_.feature_codes(f);
      size_t lo = kMaxBins, hi = 0;
      for (size_t r = begin; r < end; ++r) {
        const size_t i = rows_[r];
        const size_t b = codes[i];
        bin_weight_[b] += row_weight_[i];
        bin_sum_[b] += row_sum_[i];
        lo = std::min(lo, b);
        hi = std::max(hi, b);
      }
      if (lo == hi) {
        bin_weight_[lo] = 0.0;
        bin_sum_[lo] = 0.0;
        continue;
      }
      any_nonconstant = true;
      double wl = 0.0, sl = 0.0;
      size_t b = lo;
      while (b < hi) {
        wl += bin_weight_[b];
        sl += bin_sum_[b];
        size_t c = b + 1;
        while (bin_weight_[c] == 0.0) ++c;
        const double wr = w - wl;
        const double sr = s - sl;
        double gain;
        if (criterion_ == Criterion::kGini) {
          gain = 2.0 * (parent - Term(wl, sl) - Term(wr, sr)) / w;
        } else {
          gain = (Term(wl, sl) + Term(wr, sr) - parent) / w;
        }
        if (gain > best_gain + kSplitEpsilon) {
          best_gain = gain;
          best_feature = static_cast<int>(f);
          best_bin = b;
          best_next = c;
        }
        for (size_t e = b + 1; e < c; ++e) {
          wl += bin_weight_[e];
          sl += bin_sum_[e];
        }
        b = c;
      }
      std::fill(bin_weight_.begin() + lo, bin_weight_.begin() + hi + 1, 0.0);
      std::fill(bin_sum_.begin() + lo, bin_sum_.begin() + hi + 1, 0.0);
    }
    if (best_feature < 0) return index;

    // Stable partition through a scratch buffer.
    const size_t f = static_cast<size_t>(best_feature);
    const uint8_t* codes = x_.feature_codes(f);
    size_t mid = begin;
    size_t spill = 0;
    for (size_t r = begin; r < end; ++r) {
      const size_t i = rows_[r];
      if (codes[i] <= best_bin) {
        rows_[mid++] = i;
      } else {
        scratch_[spill++] = i;
      }
    }
    std::copy(scratch_.begin(), scratch_.begin() + spill, rows_.begin() + mid);
    nodes_[index].feature = best_feature;
    nodes_[index].threshold = x_.SplitThreshold(f, best_bin, best_next);
    const int left = Grow(begin, mid, depth + 1, 2 * heap_id);
    const int right = Grow(mid, end, depth + 1, 2 * heap_id + 1);
    nodes_[index].left = left;
    nodes_[index].right = right;
    return index;
  }

  const BinnedMatrix& x_;
  Criterion criterion_;
  std::span<const double> target_;
  std::span<const double> weights_;
  std::span<const double> hessian_;
  TreeOptions options_;
  std::vector<size_t> rows_;
  std::vector<size_t> scratch_;
  std::vector<size_t> order_;
  std::vector<double> row_weight_;
  std::vector<double> row_sum_;
  std::vector<TreeNode> nodes_;
  std::vector<double> bin_weight_;
  std::vector<double> bin_sum_;
};

}  // namespace

BinnedMatrix BinnedMatrix::Build(const FeatureMatrix& x) {
  BinnedMatrix out;
  out.rows_ = x.rows;
  out.codes_.resize(x.rows * x.cols);
  out.thresholds_.resize(x.cols);
  out.bin_values_.resize(x.cols);
  std::vector<double> sorted(x.rows);
  for (size_t f = 0; f < x.cols; ++f) {
    for (size_t i = 0; i < x.rows; ++i) sorted[i] = x.at(i, f);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> distinct;
    std::vector<size_t> counts;
    for (double v : sorted) {
      if (distinct.empty() || v != distinct.back()) {
        distinct.push_back(v);
        counts.push_back(0);
      }
      ++counts.back();
    }
    std::vector<double>& thresholds = out.thresholds_[f];
    if (distinct.size() <= kMaxBins) {
      for (size_t k = 0; k + 1 < distinct.size(); ++k) {
        thresholds.push_back(Midpoint(distinct[k], distinct[k + 1]));
      }
      out.bin_values_[f] = distinct;
    } else {
      const double per_bin =
          static_cast<double>(x.rows) / static_cast<double>(kMaxBins);
      size_t cumulative = 0;
      for (size_t k = 0; k + 1 < distinct.size(); ++k) {
        cumulative += counts[k];
        if (thresholds.size() + 1 >= kMaxBins) break;
        if (static_cast<double>(cumulative) >=
            per_bin * static_cast<double>(thresholds.size() + 1)) {
          thresholds.push_back(Midpoint(distinct[k], distinct[k + 1]));
        }
      }
    }
    for (size_t i = 0; i < x.rows; ++i) {
      const double v = x.at(i, f);
      out.codes_[f * x.rows + i] = static_cast<uint8_t>(
          std::lower_bound(thresholds.begin(), thresholds.end(), v) -
          thresholds.begin());
    }
  }
  return out;
}

double BinnedMatrix::SplitThreshold(size_t feature, size_t b, size_t c) const {
  const std::vector<double>& values = bin_values_[feature];
  if (!values.empty()) return Midpoint(values[b], values[c]);
  return thresholds_[feature][b];
}

double Tree::Predict(std::span<const double> row, int max_depth) const {
  size_t node = 0;
  while (!nodes_[node].is_leaf() && nodes_[node].depth < max_depth) {
    const TreeNode& n = nodes_[node];
    node = static_cast<size_t>(row[n.feature] <= n.threshold ? n.left : n.right);
  }
  return nodes_[node].value;
}

int Tree::depth() const {
  int d = 0;
  for (const TreeNode& n : nodes_) d = std::max(d, n.depth);
  return d;
}

json Tree::ToJson() const {
  json feature = json::array(), threshold = json::array(), left = json::array(),
       right = json::array(), value = json::array(), weight = json::array();
  for (const TreeNode& n : nodes_) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    value.push_back(n.value);
    weight.push_back(n.weight);
  }
  return {{"feature", feature}, {"threshold", threshold}, {"left", left},
          {"right", right},     {"value", value},         {"weight", weight}};
}

absl::StatusOr<Tree> Tree::FromJson(const json& j) {
  try {
    const auto feature = j.at("feature").get<std::vector<int>>();
    const auto threshold = j.at("threshold").get<std::vector<double>>();
    const auto left = j.at("left").get<std::vector<int>>();
    const auto right = j.at("right").get<std::vector<int>>();
    const auto value = j.at("value").get<std::vector<double>>();
    const auto weight = j.at("weight").get<std::vector<double>>();
    const size_t n = feature.size();
    if (n == 0 || threshold.size() != n || left.size() != n ||
        right.size() != n || value.size() != n || weight.size() != n) {
      return absl::InvalidArgumentError("tree record: malformed node arrays");
    }
    std::vector<TreeNode> nodes(n);
    for (size_t k = 0; k < n; ++k) {
      nodes[k] = TreeNode{feature[k], threshold[k], left[k], right[k], 0,
                          value[k],   weight[k]};
    }
    // Children always follow their parent in growth order.
    for (size_t k = 0; k < n; ++k) {
      if (nodes[k].is_leaf()) continue;
      for (int child : {nodes[k].left, nodes[k].right}) {
        if (child <= static_cast<int>(k) || child >= static_cast<int>(n)) {
          return absl::InvalidArgumentError("tree record: bad child index");
        }
        nodes[child].depth = nodes[k].depth + 1;
      }
    }
    return Tree(std::move(nodes));
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("tree record: ", e.what()));
  }
}

Tree GrowClassificationTree(const BinnedMatrix& x, std::span<const int> labels,
                            std::span<const double> weights,
                            const TreeOptions& options) {
  std::vector<double> target(labels.begin(), labels.end());
  return Grower(x, Criterion::kGini, target, weights, {}, options).Run();
}

Tree GrowRegressionTree(const BinnedMatrix& x, std::span<const double> target,
                        std::span<const double> weights,
                        std::span<const double> hessian,
                        const TreeOptions& options) {
  return Grower(x, Criterion::kSquaredError, target, weights, hessian, options)
      .Run();
}

}  // namespace tradeoff

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


// Brute-force reference implementations and fixture generators shared by
// the unit tests and the acceptance binary.

#ifndef TRADEOFF_TESTS_ORACLES_H_
#define TRADEOFF_TESTS_ORACLES_H_

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tradeoff/common/random.h"
#include "tradeoff/data/dataset.h"
#include "tradeoff/learning/decision_tree.h"
#include "tradeoff/learning/feature_matrix.h"

namespace tradeoff::testing {

// Mixed-type table with small value ranges so that quasi-identifier
// signatures collide often. Columns: n0.. (integer-valued numerics, QI),
// c0.. (categoricals, QI), "group" ("0"/"1", protected), "y" (target,
// positive label "1").
struct TableSpec {
  size_t rows = 50;
  size_t numeric = 2;
  size_t categorical = 2;
  int numeric_range = 4;  // values 0..numeric_range
  int levels = 3;
};

TableSpec RandomSpec(Rng& rng, size_t max_rows);
Dataset RandomTable(Rng& rng, const TableSpec& spec);
std::vector<std::string> QuasiIdentifiers(const Dataset& data);

// Same as RandomTable but numerics are real-valued (continuous noise).
Dataset RandomRealTable(Rng& rng, const TableSpec& spec);

struct BruteFairness {
  std::optional<double> dp;
  std::optional<double> tpr_diff;
  std::optional<double> fpr_diff;
  std::optional<double> eo;
};

// Rates by direct iteration over rows; unset where a group or a
// (group, label) cell is empty.
BruteFairness BruteFairnessMetrics(const std::vector<int>& predicted,
                                   const std::vector<int>& truth,
                                   const std::vector<int>& group);

// k(r) for every row by pairwise comparison of QI values.
std::vector<size_t> BruteClassSizes(const Dataset& data,
                                    const std::vector<std::string>& qis);

// Single-outs of `original` whose QI values equal those of some row of
// `released` at index >= released_begin.
size_t BruteLinkageMatches(const Dataset& original, const Dataset& released,
                           size_t released_begin,
                           const std::vector<std::string>& qis);

// Exhaustive Gini CART: every midpoint between consecutive distinct
// node-local values of every feature, first best split kept unless beaten
// by more than 1e-12, split only with positive gain above 1e-12.
struct OracleNode {
  int feature = -1;
  double threshold = 0.0;
  double value = 0.0;
  std::unique_ptr<OracleNode> left;
  std::unique_ptr<OracleNode> right;
};

std::unique_ptr<OracleNode> OracleCart(const FeatureMatrix& x, int max_depth);

// Empty when the trees agree, otherwise a description of the first
// difference.
std::string CompareTrees(const Tree& tree, const OracleNode& oracle);

// P(component c of Dirichlet(alpha) is the largest), by one-dimensional
// quadrature over independent gamma variables.
double DirichletArgmaxProbability(const std::array<double, 3>& alpha, size_t c);

// Binary group S ~ Bernoulli(1/2), label Y = S flipped with probability
// 0.05 (Pearson correlation 0.9), signal X ~ N(2Y - 1, 0.8^2). Features
// (S, X). Every fifth row goes to the test set.
struct BiasedData {
  FeatureMatrix train;
  FeatureMatrix test;
  std::vector<int> train_groups;
  std::vector<int> test_groups;
};

BiasedData MakeBiasedData(size_t n, uint64_t seed);

// Writes the first `rows` records of the bundled Adult file plus dataset
// and experiment configs (single-point synthesis grid, logistic and a small
// forest, with and without the fairness reduction) into `dir`. Returns the
// experiment config path.
std::string WriteToyExperiment(const std::string& dir, size_t rows);

// Labeled matrix with `features` Gaussian features and a logistic label.
FeatureMatrix RandomMatrix(Rng& rng, size_t rows, size_t features);

}  // namespace tradeoff::testing

#endif  // TRADEOFF_TESTS_ORACLES_H_

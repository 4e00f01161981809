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


#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tradeoff::testing {
namespace {

Column Numeric(std::string name, RoleSet roles) {
  Column c;
  c.name = std::move(name);
  c.kind = ColumnKind::kNumeric;
  c.roles = roles;
  return c;
}

Column Categorical(std::string name, RoleSet roles) {
  Column c;
  c.name = std::move(name);
  c.kind = ColumnKind::kCategorical;
  c.roles = roles;
  return c;
}

Dataset MakeTable(Rng& rng, const TableSpec& spec, bool real) {
  std::vector<Column> columns;
  for (size_t j = 0; j < spec.numeric; ++j) {
    Column c = Numeric("n" + std::to_string(j), {Role::kQuasiIdentifier});
    for (size_t r = 0; r < spec.rows; ++r) {
      const uint64_t range = static_cast<uint64_t>(spec.numeric_range) + 1;
      c.numbers.push_back(real ? rng.Uniform(0.0, static_cast<double>(range))
                               : static_cast<double>(rng.UniformInt(range)));
    }
    columns.push_back(std::move(c));
  }
  for (size_t j = 0; j < spec.categorical; ++j) {
    Column c = Categorical("c" + std::to_string(j), {Role::kQuasiIdentifier});
    for (size_t r = 0; r < spec.rows; ++r) {
      c.labels.push_back(
          "v" + std::to_string(rng.UniformInt(static_cast<uint64_t>(spec.levels))));
    }
    columns.push_back(std::move(c));
  }
  Column group = Categorical("group", {Role::kProtected});
  Column y = Categorical("y", {Role::kTarget});
  for (size_t r = 0; r < spec.rows; ++r) {
    group.labels.push_back(rng.Bernoulli(0.5) ? "1" : "0");
    y.labels.push_back(rng.Bernoulli(0.4) ? "1" : "0");
  }
  columns.push_back(std::move(group));
  columns.push_back(std::move(y));
  return Dataset::Create("random", std::move(columns), "1").value();
}

bool SameQi(const Dataset& a, size_t ra, const Dataset& b, size_t rb,
            const std::vector<std::string>& qis) {
  for (const std::string& q : qis) {
    const Column& ca = a.column(*a.FindColumn(q));
    const Column& cb = b.column(*b.FindColumn(q));
    if (ca.is_numeric()) {
      if (ca.numbers[ra] != cb.numbers[rb]) return false;
    } else if (ca.labels[ra] != cb.labels[rb]) {
      return false;
    }
  }
  return true;
}

double Gini(double n, double positives) {
  if (n == 0.0) return 0.0;
  const double p = positives / n;
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

std::unique_ptr<OracleNode> Build(const FeatureMatrix& x,
                                  const std::vector<size_t>& rows, int depth,
                                  int max_depth) {
  auto node = std::make_unique<OracleNode>();
  double positives = 0.0;
  for (size_t i : rows) positives += x.labels[i];
  const double n = static_cast<double>(rows.size());
  node->value = positives / n;
  if (depth >= max_depth) return node;

  const double parent = Gini(n, positives);
  double best_gain = 0.0;
  int best_feature = -1;
  double best_threshold = 0.0;
  for (size_t f = 0; f < x.cols; ++f) {
    std::vector<double> values;
    for (size_t i : rows) values.push_back(x.at(i, f));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (size_t k = 0; k + 1 < values.size(); ++k) {
      const double t = (values[k] + values[k + 1]) / 2.0;
      double nl = 0.0, pl = 0.0, nr = 0.0, pr = 0.0;
      for (size_t i : rows) {
        if (x.at(i, f) <= t) {
          nl += 1.0;
          pl += x.labels[i];
        } else {
          nr += 1.0;
          pr += x.labels[i];
        }
      }
      const double gain = parent - nl / n * Gini(nl, pl) - nr / n * Gini(nr, pr);
      if (gain > best_gain + 1e-12) {
        best_gain = gain;
        best_feature = static_cast<int>(f);
        best_threshold = t;
      }
    }
  }
  if (best_feature < 0) return node;
  node->feature = best_feature;
  node->threshold = best_threshold;
  std::vector<size_t> left, right;
  for (size_t i : rows) {
    (x.at(i, static_cast<size_t>(best_feature)) <= best_threshold ? left : right)
        .push_back(i);
  }
  node->left = Build(x, left, depth + 1, max_depth);
  node->right = Build(x, right, depth + 1, max_depth);
  return node;
}

std::string Compare(const std::vector<TreeNode>& nodes, int index,
                    const OracleNode& oracle, const std::string& path) {
  const TreeNode& n = nodes[static_cast<size_t>(index)];
  std::ostringstream out;
  if (std::abs(n.value - oracle.value) > 1e-12) {
    out << path << ": value " << n.value << " vs " << oracle.value;
    return out.str();
  }
  if (n.feature != oracle.feature) {
    out << path << ": feature " << n.feature << " vs " << oracle.feature;
    return out.str();
  }
  if (n.feature < 0) return "";
  if (std::abs(n.threshold - oracle.threshold) > 1e-12) {
    out << path << ": threshold " << n.threshold << " vs " << oracle.threshold;
    return out.str();
  }
  std::string left = Compare(nodes, n.left, *oracle.left, path + "L");
  if (!left.empty()) return left;
  return Compare(nodes, n.right, *oracle.right, path + "R");
}

// Regularized lower incomplete gamma P(a, x) by its power series.
double LowerGammaP(double a, double x) {
  if (x <= 0.0) return 0.0;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 2000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return std::exp(a * std::log(x) - x - std::lgamma(a)) * sum;
}

}  // namespace

TableSpec RandomSpec(Rng& rng, size_t max_rows) {
  TableSpec spec;
  spec.rows = 2 + static_cast<size_t>(rng.UniformInt(max_rows - 1));
  spec.numeric = static_cast<size_t>(rng.UniformInt(3));
  spec.categorical = 1 + static_cast<size_t>(rng.UniformInt(3));
  spec.numeric_range = 1 + static_cast<int>(rng.UniformInt(6));
  spec.levels = 2 + static_cast<int>(rng.UniformInt(4));
  return spec;
}

Dataset RandomTable(Rng& rng, const TableSpec& spec) {
  return MakeTable(rng, spec, false);
}

Dataset RandomRealTable(Rng& rng, const TableSpec& spec) {
  return MakeTable(rng, spec, true);
}

std::vector<std::string> QuasiIdentifiers(const Dataset& data) {
  return data.ColumnsWithRole(Role::kQuasiIdentifier);
}

BruteFairness BruteFairnessMetrics(const std::vector<int>& predicted,
                                   const std::vector<int>& truth,
                                   const std::vector<int>& group) {
  size_t n[2] = {0, 0}, sel[2] = {0, 0};
  size_t pos[2] = {0, 0}, tp[2] = {0, 0}, neg[2] = {0, 0}, fp[2] = {0, 0};
  for (size_t i = 0; i < predicted.size(); ++i) {
    const int g = group[i];
    ++n[g];
    if (predicted[i] == 1) ++sel[g];
    if (truth[i] == 1) {
      ++pos[g];
      if (predicted[i] == 1) ++tp[g];
    } else {
      ++neg[g];
      if (predicted[i] == 1) ++fp[g];
    }
  }
  auto rate = [](size_t a, size_t b) {
    return static_cast<double>(a) / static_cast<double>(b);
  };
  BruteFairness out;
  if (n[0] > 0 && n[1] > 0) out.dp = std::abs(rate(sel[1], n[1]) - rate(sel[0], n[0]));
  if (pos[0] > 0 && pos[1] > 0) {
    out.tpr_diff = std::abs(rate(tp[1], pos[1]) - rate(tp[0], pos[0]));
  }
  if (neg[0] > 0 && neg[1] > 0) {
    out.fpr_diff = std::abs(rate(fp[1], neg[1]) - rate(fp[0], neg[0]));
  }
  if (out.tpr_diff && out.fpr_diff) out.eo = std::max(*out.tpr_diff, *out.fpr_diff);
  return out;
}

std::vector<size_t> BruteClassSizes(const Dataset& data,
                                    const std::vector<std::string>& qis) {
  std::vector<size_t> k(data.num_rows(), 0);
  for (size_t i = 0; i < data.num_rows(); ++i) {
    for (size_t j = 0; j < data.num_rows(); ++j) {
      if (SameQi(data, i, data, j, qis)) ++k[i];
    }
  }
  return k;
}

size_t BruteLinkageMatches(const Dataset& original, const Dataset& released,
                           size_t released_begin,
                           const std::vector<std::string>& qis) {
  const std::vector<size_t> k = BruteClassSizes(original, qis);
  size_t matches = 0;
  for (size_t r = 0; r < original.num_rows(); ++r) {
    if (k[r] != 1) continue;
    for (size_t s = released_begin; s < released.num_rows(); ++s) {
      if (SameQi(original, r, released, s, qis)) {
        ++matches;
        break;
      }
    }
  }
  return matches;
}

std::unique_ptr<OracleNode> OracleCart(const FeatureMatrix& x, int max_depth) {
  std::vector<size_t> rows(x.rows);
  for (size_t i = 0; i < x.rows; ++i) rows[i] = i;
  return Build(x, rows, 0, max_depth);
}

std::string CompareTrees(const Tree& tree, const OracleNode& oracle) {
  return Compare(tree.nodes(), 0, oracle, "root");
}

double DirichletArgmaxProbability(const std::array<double, 3>& alpha, size_t c) {
  // P(G_c > G_j for all j) with independent G_j ~ Gamma(alpha_j), integrated
  // over x = G_c. For alpha_c < 1 the substitution x = u^(1/alpha_c) removes
  // the singularity of the density at 0.
  const double a = alpha[c];
  const double k = a < 1.0 ? 1.0 / a : 1.0;
  const double x_max = a + 40.0 * std::sqrt(a) + 60.0;
  const double upper = std::pow(x_max, 1.0 / k);
  const int steps = 40000;
  const double h = upper / steps;
  auto f = [&](double u) {
    const double x = std::pow(u, k);
    double density;
    if (a < 1.0) {
      density = k * std::exp(-x - std::lgamma(a));
    } else {
      density = x > 0.0 ? std::exp((a - 1.0) * std::log(x) - x - std::lgamma(a))
                        : (a == 1.0 ? 1.0 : 0.0);
    }
    for (size_t j = 0; j < 3; ++j) {
      if (j != c) density *= LowerGammaP(alpha[j], x);
    }
    return density;
  };
  double sum = f(0.0) + f(upper);
  for (int s = 1; s < steps; ++s) sum += (s % 2 == 1 ? 4.0 : 2.0) * f(s * h);
  return sum * h / 3.0;
}

BiasedData MakeBiasedData(size_t n, uint64_t seed) {
  Rng rng(seed);
  BiasedData out;
  for (FeatureMatrix* m : {&out.train, &out.test}) {
    m->cols = 2;
    m->numeric = {true, true};
  }
  for (size_t i = 0; i < n; ++i) {
    const int s = rng.Bernoulli(0.5) ? 1 : 0;
    const int y = rng.Bernoulli(0.05) ? 1 - s : s;
    const double x = (2.0 * y - 1.0) + 0.8 * rng.Normal();
    const bool test = i % 5 == 4;
    FeatureMatrix& m = test ? out.test : out.train;
    m.values.push_back(s);
    m.values.push_back(x);
    m.labels.push_back(y);
    ++m.rows;
    (test ? out.test_groups : out.train_groups).push_back(s);
  }
  return out;
}

std::string WriteToyExperiment(const std::string& dir, size_t rows) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ifstream in(std::string(TRADEOFF_SOURCE_DIR) + "/data/adult.csv");
  std::ofstream csv(fs::path(dir) / "toy.csv");
  std::string line;
  for (size_t i = 0; i <= rows && std::getline(in, line); ++i) csv << line << "\n";
  std::ofstream(fs::path(dir) / "toy.json") << R"({
  "name": "toy",
  "path": "toy.csv",
  "target": "income-per-year",
  "positive_class": ">50K",
  "quasi_identifiers": ["education", "age", "sex", "race", "occupation", "native-country"],
  "protected": [
    {"attribute": "sex", "privileged_values": ["Male"]},
    {"attribute": "race", "privileged_values": ["White"]}
  ],
  "fairness_attribute": "sex"
}
)";
  const fs::path config = fs::path(dir) / "experiment.json";
  std::ofstream(config) << R"({
  "dataset": "toy.json",
  "seed": 3,
  "synthesis": {"privatesmote": "single", "include_original": true},
  "learners": ["logit", {"kind": "rf", "grid": {"n_estimators": [20], "max_depth": [4]}}],
  "fairness": {"methods": ["none", "eg"], "max_iterations": 10},
  "analysis": {"mc_samples": 2000}
}
)";
  return config.string();
}

FeatureMatrix RandomMatrix(Rng& rng, size_t rows, size_t features) {
  FeatureMatrix x;
  x.rows = rows;
  x.cols = features;
  x.numeric.assign(features, true);
  std::vector<double> beta(features);
  for (double& b : beta) b = rng.Normal();
  for (size_t i = 0; i < rows; ++i) {
    double z = 0.0;
    for (size_t j = 0; j < features; ++j) {
      const double v = rng.Normal();
      x.values.push_back(v);
      z += beta[j] * v;
    }
    x.labels.push_back(rng.Bernoulli(1.0 / (1.0 + std::exp(-z))) ? 1 : 0);
  }
  return x;
}

}  // namespace tradeoff::testing

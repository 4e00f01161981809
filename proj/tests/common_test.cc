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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gtest/gtest.h"
#include "tradeoff/common/csv.h"
#include "tradeoff/common/digest.h"
#include "tradeoff/common/random.h"

namespace tradeoff {
namespace {

TEST(CsvTest, ParsesQuotedAndTrimmedFields) {
  absl::StatusOr<CsvTable> t = ParseCsv("a, b ,c\n1,\"x, y\", z \n");
  ASSERT_TRUE(t.ok()) << t.status();
  EXPECT_EQ(t->header, (std::vector<std::string>{"a", "b", "c"}));
  ASSERT_EQ(t->rows.size(), 1u);
  EXPECT_EQ(t->rows[0], (std::vector<std::string>{"1", "x, y", "z"}));
}

TEST(CsvTest, FormatParseRoundTrip) {
  CsvTable t;
  t.header = {"name", "note"};
  t.rows = {{"a", "has,comma"}, {"b", "has \"quote\""}, {"c", ""}};
  absl::StatusOr<CsvTable> back = ParseCsv(FormatCsv(t));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(back->header, t.header);
  EXPECT_EQ(back->rows, t.rows);
}

TEST(CsvTest, RejectsRaggedRows) {
  EXPECT_FALSE(ParseCsv("a,b\n1,2,3\n").ok());
}

TEST(NumberTest, FormatRoundTripsRandomDoubles) {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const double v = rng.Normal() * std::pow(10.0, rng.Uniform(-30, 30));
    const std::optional<double> back = ParseNumber(FormatNumber(v));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, v);
  }
  EXPECT_EQ(FormatNumber(0.5), "0.5");
  EXPECT_EQ(FormatNumber(3.0), "3");
}

TEST(NumberTest, ParseIsStrict) {
  EXPECT_FALSE(ParseNumber("").has_value());
  EXPECT_FALSE(ParseNumber("1.5x").has_value());
  EXPECT_FALSE(ParseNumber("nan").has_value());
  EXPECT_FALSE(ParseNumber("inf").has_value());
  EXPECT_EQ(ParseNumber("-2.25"), -2.25);
}

TEST(DigestTest, KnownVectors) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(HexDigest(0xabcULL), "0000000000000abc");
}

TEST(RandomTest, SameSeedSameStream) {
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(RandomTest, UniformIntStaysInRangeAndCoversIt) {
  Rng rng(1);
  for (uint64_t n : {1ULL, 2ULL, 7ULL, 1000ULL}) {
    std::set<uint64_t> seen;
    for (int i = 0; i < 5000; ++i) {
      const uint64_t v = rng.UniformInt(n);
      ASSERT_LT(v, n);
      seen.insert(v);
    }
    if (n <= 7) EXPECT_EQ(seen.size(), n);
  }
}

TEST(RandomTest, ShuffleIsAPermutation) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> v(1 + trial);
    std::iota(v.begin(), v.end(), 0);
    rng.Shuffle(v);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i <= trial; ++i) EXPECT_EQ(sorted[i], i);
  }
}

TEST(RandomTest, NormalAndGammaMoments) {
  Rng rng(11);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.Normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
  for (double shape : {0.3, 1.0, 4.5}) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
      const double g = rng.Gamma(shape);
      ASSERT_GE(g, 0.0);
      m += g;
    }
    EXPECT_NEAR(m / n, shape, 0.03 * std::max(1.0, shape));
  }
}

TEST(RandomTest, DerivedSeedsDiffer) {
  std::set<uint64_t> seeds;
  for (uint64_t i = 0; i < 1000; ++i) seeds.insert(DeriveSeed(42, i));
  seeds.insert(DeriveSeed(42, "split"));
  seeds.insert(DeriveSeed(42, "synthesis"));
  EXPECT_EQ(seeds.size(), 1002u);
  EXPECT_EQ(DeriveSeed(42, "split"), DeriveSeed(42, "split"));
  EXPECT_NE(DeriveSeed(42, "split"), DeriveSeed(43, "split"));
}

}  // namespace
}  // namespace tradeoff

// Copyright 2026 The dprel Authors
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

#include "dprel/marginals.h"

#include <numeric>
#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace dprel {
namespace {

using ::dprel::testing::DenseQueries;
using ::dprel::testing::DenseQueryValues;
using ::dprel::testing::PairEnumerationMarginal;
using ::dprel::testing::RandomAdjacency;
using ::dprel::testing::RandomTable;
using ::testing::ElementsAre;

Schema BinarySchema(int d, const char* prefix) {
  std::vector<Feature> f;
  for (int i = 0; i < d; ++i) f.push_back({prefix + std::to_string(i), 2});
  return *Schema::Create(f);
}

int64_t Choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

TEST(EnumerateCrossWorkloadsTest, TwoByTwoOrderThree) {
  std::vector<Workload> w =
      EnumerateCrossWorkloads(BinarySchema(2, "f"), BinarySchema(2, "g"), 3);
  EXPECT_THAT(w, ElementsAre(Workload::Cross({0, 1}, {0}),
                             Workload::Cross({0, 1}, {1}),
                             Workload::Cross({0}, {0, 1}),
                             Workload::Cross({1}, {0, 1})));
}

TEST(EnumerateCrossWorkloadsTest, ImpossibleSplitIsEmpty) {
  EXPECT_TRUE(
      EnumerateCrossWorkloads(BinarySchema(1, "f"), BinarySchema(1, "g"), 3)
          .empty());
}

TEST(EnumerateCrossWorkloadsTest, CountMatchesBinomialSum) {
  for (int d1 = 1; d1 <= 4; ++d1) {
    for (int d2 = 1; d2 <= 4; ++d2) {
      for (int k = 2; k <= 5; ++k) {
        int64_t expected = 0;
        for (int a = 1; a < k; ++a) expected += Choose(d1, a) * Choose(d2, k - a);
        EXPECT_EQ(static_cast<int64_t>(
                      EnumerateCrossWorkloads(BinarySchema(d1, "f"),
                                              BinarySchema(d2, "g"), k)
                          .size()),
                  expected)
            << d1 << " " << d2 << " " << k;
      }
    }
  }
  EXPECT_EQ(
      EnumerateCrossWorkloads(BinarySchema(3, "f"), BinarySchema(3, "g"), 2)
          .size(),
      9u);
}

TEST(EnumerateTableWorkloadsTest, CountsCombinations) {
  EXPECT_EQ(EnumerateTableWorkloads(BinarySchema(4, "f"), 2, WorkloadKind::kTable1)
                .size(),
            6u);
}

TEST(WorkloadTest, ValidateRejectsBadIndices) {
  Schema s1 = BinarySchema(2, "f"), s2 = BinarySchema(2, "g");
  EXPECT_TRUE(ValidateWorkload(Workload::Cross({0}, {1}), s1, s2).ok());
  EXPECT_FALSE(ValidateWorkload(Workload::Cross({2}, {1}), s1, s2).ok());
  EXPECT_FALSE(ValidateWorkload(Workload::Cross({1, 0}, {1}), s1, s2).ok());
  EXPECT_FALSE(ValidateWorkload(Workload::Cross({}, {1}), s1, s2).ok());
}

TEST(ComputeCrossMarginalTest, HandExample) {
  Schema a = *Schema::Create({{"A", 2}});
  Schema b = *Schema::Create({{"B", 2}});
  Table t1 = *Table::Create(a, {{0}, {1}});
  Table t2 = *Table::Create(b, {{0}, {1}});
  BiAdjacency adj = *BiAdjacency::Create(2, 2, {{0, 0}, {1, 0}, {1, 1}});
  MarginalVector p = *ComputeCrossMarginal(t1, t2, adj, Workload::Cross({0}, {0}));
  const std::vector<double> oracle =
      PairEnumerationMarginal(t1, t2, adj, Workload::Cross({0}, {0}));
  EXPECT_EQ(p.probs, oracle);
  EXPECT_THAT(p.probs, ElementsAre(1.0 / 3, 0.0, 1.0 / 3, 1.0 / 3));
}

TEST(ComputeCrossMarginalTest, IdenticalRowsConcentrate) {
  Schema a = *Schema::Create({{"A", 3}});
  Table t1 = *Table::Create(a, {{2}, {2}, {2}});
  Table t2 = *Table::Create(a, {{1}, {1}});
  BiAdjacency adj = *BiAdjacency::Create(3, 2, {{0, 0}, {2, 1}});
  MarginalVector p = *ComputeCrossMarginal(t1, t2, adj, Workload::Cross({0}, {0}));
  EXPECT_THAT(p.probs, ElementsAre(0, 0, 0, 0, 0, 0, 0, 1, 0));
  EXPECT_EQ(p.Cell(7), (std::vector<int>{2, 1}));
}

TEST(ComputeCrossMarginalTest, NoEdgesIsAnError) {
  Rng rng(1);
  Table t1 = RandomTable(3, {2}, rng, "a");
  Table t2 = RandomTable(3, {2}, rng, "b");
  EXPECT_FALSE(ComputeCrossMarginal(t1, t2, BiAdjacency(3, 3),
                                    Workload::Cross({0}, {0}))
                   .ok());
}

TEST(ComputeCrossMarginalTest, SumsToOneAndMatchesOracle) {
  Rng rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    Table t1 = RandomTable(5, {2, 3}, rng, "a");
    Table t2 = RandomTable(4, {3, 2}, rng, "b");
    BiAdjacency adj = RandomAdjacency(5, 4, 1 + trial % 20, rng);
    for (const Workload& w :
         EnumerateCrossWorkloads(t1.schema(), t2.schema(), 3)) {
      MarginalVector p = *ComputeCrossMarginal(t1, t2, adj, w);
      EXPECT_EQ(p.probs, PairEnumerationMarginal(t1, t2, adj, w));
      EXPECT_NEAR(std::accumulate(p.probs.begin(), p.probs.end(), 0.0), 1.0,
                  1e-12);
    }
  }
}

TEST(ComputeTableMarginalTest, CountsRows) {
  Schema a = *Schema::Create({{"A", 2}, {"B", 2}});
  Table t = *Table::Create(a, {{0, 1}, {0, 1}, {1, 0}, {1, 1}});
  Workload w{WorkloadKind::kTable1, {0, 1}, {}};
  EXPECT_THAT(ComputeTableMarginal(t, w)->probs, ElementsAre(0, 0.5, 0.25, 0.25));
}

TEST(QueryMatrixTest, BlockIndicatorsMatchMarginalCells) {
  Rng rng(23);
  Table t1 = RandomTable(4, {2, 2}, rng, "a");
  Table t2 = RandomTable(3, {2}, rng, "b");
  QueryMatrix q(4, 3);
  Workload w = Workload::Cross({0, 1}, {0});
  ASSERT_TRUE(q.AddCrossWorkload(t1, t2, w).ok());
  EXPECT_EQ(q.num_queries(), 8);
  for (int trial = 0; trial < 20; ++trial) {
    BiAdjacency adj = RandomAdjacency(4, 3, 1 + trial % 12, rng);
    std::vector<double> b(12, 0.0);
    for (const Edge& e : adj.edges()) b[e.first * 3 + e.second] = 1.0;
    WeightedBiAdjacency wb = *WeightedBiAdjacency::FromValues(4, 3, b);
    EXPECT_EQ(*QueryValuesWeighted(q, wb),
              ComputeCrossMarginal(t1, t2, adj, w)->probs);
  }
}

TEST(QueryValuesWeightedTest, AllOnesQuerySumsMass) {
  QueryMatrix q(2, 2);
  const std::vector<uint8_t> ones = {1, 1};
  ASSERT_TRUE(q.AddQuery(ones, ones).ok());
  WeightedBiAdjacency b =
      *WeightedBiAdjacency::FromValues(2, 2, {0.3, 0.2, 0.9, 0.1});
  EXPECT_NEAR((*QueryValuesWeighted(q, b))[0], 1.0, 1e-15);
}

TEST(QueryValuesWeightedTest, HalfMatrixExample) {
  QueryMatrix q(2, 2);
  const std::vector<uint8_t> u = {1, 0}, v = {1, 1};
  ASSERT_TRUE(q.AddQuery(u, v).ok());
  WeightedBiAdjacency b = *WeightedBiAdjacency::Create(2, 2, {0.5, 0.5, 0.5, 0.5}, 2.0);
  const double value = (*QueryValuesWeighted(q, b))[0];
  EXPECT_DOUBLE_EQ(value, DenseQueryValues(q, b.values(), 2.0)[0]);
  EXPECT_DOUBLE_EQ(value, 0.5);
}

TEST(QueryValuesWeightedTest, ZeroMassIsAnError) {
  QueryMatrix q(1, 1);
  const std::vector<uint8_t> one = {1};
  ASSERT_TRUE(q.AddQuery(one, one).ok());
  EXPECT_FALSE(QueryValuesWeighted(q, *WeightedBiAdjacency::FromValues(1, 1, {0.0})).ok());
}

TEST(ApplyQtTest, ZeroCoefficientsGiveZeroMatrix) {
  Rng rng(2);
  Table t1 = RandomTable(3, {2}, rng, "a");
  Table t2 = RandomTable(3, {2}, rng, "b");
  QueryMatrix q(3, 3);
  ASSERT_TRUE(q.AddCrossWorkload(t1, t2, Workload::Cross({0}, {0})).ok());
  DenseMatrix r = *ApplyQt(q, std::vector<double>(4, 0.0));
  for (double v : r.values) EXPECT_EQ(v, 0.0);
  EXPECT_FALSE(ApplyQt(q, std::vector<double>(3, 0.0)).ok());
}

TEST(ApplyQtTest, SingleQueryIsOuterProduct) {
  QueryMatrix q(2, 3);
  const std::vector<uint8_t> u = {0, 1}, v = {1, 0, 1};
  ASSERT_TRUE(q.AddQuery(u, v).ok());
  DenseMatrix r = *ApplyQt(q, std::vector<double>{1.0});
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(r.at(i, j), u[i] * v[j]);
  }
}

TEST(ApplyQtTest, MatchesDenseTranspose) {
  Rng rng(29);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    const int n1 = 1 + trial % 5, n2 = 1 + (trial / 5) % 5;
    Table t1 = RandomTable(n1, {2, 3}, rng, "a");
    Table t2 = RandomTable(n2, {2}, rng, "b");
    QueryMatrix q(n1, n2);
    ASSERT_TRUE(q.AddCrossWorkload(t1, t2, Workload::Cross({1}, {0})).ok());
    ASSERT_TRUE(q.AddCrossWorkload(t1, t2, Workload::Cross({0, 1}, {0})).ok());
    std::vector<double> r(q.num_queries());
    for (double& v : r) v = normal(rng);
    Eigen::VectorXd expected =
        DenseQueries(q).transpose() * Eigen::Map<Eigen::VectorXd>(r.data(), r.size());
    DenseMatrix got = *ApplyQt(q, r);
    for (int k = 0; k < n1 * n2; ++k) EXPECT_NEAR(got.values[k], expected(k), 1e-12);
  }
}

TEST(QueryMatrixTest, SliceRestrictsIndicators) {
  Rng rng(31);
  Table t1 = RandomTable(5, {3}, rng, "a");
  Table t2 = RandomTable(4, {2}, rng, "b");
  QueryMatrix q(5, 4);
  ASSERT_TRUE(q.AddCrossWorkload(t1, t2, Workload::Cross({0}, {0})).ok());
  SliceSelector sel = *SliceSelector::Create({1, 3, 4}, {0, 2}, 5, 4);
  QueryMatrix s = *q.Slice(sel);
  ASSERT_EQ(s.num_queries(), q.num_queries());
  for (int64_t k = 0; k < q.num_queries(); ++k) {
    const auto [u, v] = q.Indicators(k);
    const auto [su, sv] = s.Indicators(k);
    for (int a = 0; a < 3; ++a) EXPECT_EQ(su[a], u[sel.rows[a]]);
    for (int b = 0; b < 2; ++b) EXPECT_EQ(sv[b], v[sel.cols[b]]);
  }
}

TEST(TvScoreTest, Examples) {
  MarginalVector p{Workload::Cross({0}, {0}), {2, 1}, {1.0, 0.0}};
  MarginalVector q = p;
  EXPECT_EQ(*TvScore(p, q), 0.0);
  q.probs = {0.0, 1.0};
  EXPECT_EQ(*TvScore(p, q), 1.0);
  p.probs = {0.5, 0.5};
  q.probs = {0.8, 0.2};
  EXPECT_NEAR(*TvScore(p, q), 0.3, 1e-15);
  MarginalVector other{Workload::Cross({1}, {0}), {2, 1}, {0.5, 0.5}};
  EXPECT_FALSE(TvScore(p, other).ok());
}

TEST(WorkloadMseTest, Examples) {
  const std::vector<double> a = {0.3, 0.7};
  EXPECT_EQ(*WorkloadMse(a, a, 1), 0.0);
  const std::vector<double> b = {0.2, 0.8};
  EXPECT_NEAR(*WorkloadMse(a, b, 1), 0.02, 1e-15);
  const std::vector<double> c = {0.1, 0.9};
  EXPECT_NEAR(*WorkloadMse(a, c, 1), 4 * *WorkloadMse(a, b, 1), 1e-15);
  EXPECT_FALSE(WorkloadMse(a, std::vector<double>{0.1}, 1).ok());
}

}  // namespace
}  // namespace dprel

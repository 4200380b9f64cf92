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

// Independent reference implementations used by the unit and acceptance
// tests. None of them share code with the library beyond its data types.

#ifndef DPREL_TESTS_TEST_SUPPORT_H_
#define DPREL_TESTS_TEST_SUPPORT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dprel/marginals.h"
#include "dprel/relational.h"
#include "dprel/rng.h"

namespace dprel::testing {

// Unwraps a StatusOr, aborting the test binary with the status on error.
#define DPREL_ASSERT_OK_AND_ASSIGN(lhs, expr)                      \
  auto DPREL_CONCAT_(status_or_, __LINE__) = (expr);                \
  ASSERT_TRUE(DPREL_CONCAT_(status_or_, __LINE__).ok())             \
      << DPREL_CONCAT_(status_or_, __LINE__).status();              \
  lhs = *std::move(DPREL_CONCAT_(status_or_, __LINE__))
#define DPREL_CONCAT_(a, b) DPREL_CONCAT_INNER_(a, b)
#define DPREL_CONCAT_INNER_(a, b) a##b

// Capped-simplex projection by active-set enumeration. A KKT point has
// lower, free and upper sets ordered by b, so it is enough to try every
// split of the sorted coordinates and keep the one satisfying the KKT
// conditions.
std::vector<double> ProjectByKktEnumeration(std::span<const double> b,
                                            double m);

// Same projection by brute force over all 3^N assignments of each
// coordinate to {0, free, 1}. Only for N <= 10.
std::vector<double> ProjectByFullEnumeration(std::span<const double> b,
                                             double m);

// Dense (#queries x n1*n2) matrix of a query stack.
Eigen::MatrixXd DenseQueries(const QueryMatrix& q);

double LargestSingularValue(const Eigen::MatrixXd& q);

double DenseObjective(const Eigen::MatrixXd& q, const Eigen::VectorXd& a_hat,
                      double m, const Eigen::VectorXd& b);

// Minimizer of ||Q b / m - a_hat||^2 over {0 <= b <= 1, sum b = m} by
// accelerated projected gradient with adaptive restart.
Eigen::VectorXd ReferenceOptimum(const Eigen::MatrixXd& q,
                                 const Eigen::VectorXd& a_hat, double m,
                                 int iterations);

// Cross marginal by looping over every (row1, row2) pair.
std::vector<double> PairEnumerationMarginal(const Table& t1, const Table& t2,
                                            const BiAdjacency& adj,
                                            const Workload& w);

// Q b / m computed from the explicit indicator vectors.
std::vector<double> DenseQueryValues(const QueryMatrix& q,
                                     std::span<const double> b, double m);

// Random table with the given cardinalities.
Table RandomTable(int rows, const std::vector<int>& cardinalities, Rng& rng,
                  const char* prefix);

// A set of `m` distinct uniformly random cells.
BiAdjacency RandomAdjacency(int n1, int n2, int m, Rng& rng);

// Random vector in [0, 1]^n with integer sum m: a feasible input for the
// sampler. Some coordinates are exactly 0 or 1.
std::vector<double> RandomFeasibleVector(int n, int m, Rng& rng);

// Two tables of `rows` records with three binary features each, linked by
// m edges whose endpoints agree on planted features, every record having
// degree at most d_max.
RelationalDatabase PlantedDatabase(int rows, int m, int d_max, uint64_t seed);

// The biased sampler: independent Bernoulli(x_i) draws, rejected until
// exactly m indices are set. Used to show that it is not marginal
// preserving.
std::vector<int> RejectionSample(std::span<const double> x, int m, Rng& rng);

// Half-width of a k-sigma band for a binomial frequency.
double BinomialBand(double p, int64_t trials, double k);

}  // namespace dprel::testing

#endif  // DPREL_TESTS_TEST_SUPPORT_H_

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

// k-way marginal workloads over single tables and across a relationship.
//
// A cross-table query with reference values (y1, y2) counts the related
// pairs (i, j) whose projections match, normalized by the edge count. As a
// function of the adjacency B it is u^T B v / m, where u marks the table1
// rows matching y1 and v the table2 rows matching y2. QueryMatrix keeps
// only that rank-one factorization, never the length n1*n2 query vector.

#ifndef DPREL_MARGINALS_H_
#define DPREL_MARGINALS_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dprel/relational.h"

namespace dprel {

enum class WorkloadKind { kTable1, kTable2, kCross };

struct Workload {
  WorkloadKind kind = WorkloadKind::kCross;
  std::vector<int> side1;  // table1 feature indices, ascending
  std::vector<int> side2;  // table2 feature indices, ascending

  static Workload Cross(std::vector<int> s1, std::vector<int> s2) {
    return {WorkloadKind::kCross, std::move(s1), std::move(s2)};
  }

  int order() const { return static_cast<int>(side1.size() + side2.size()); }
  // e.g. "[0,2]x[1]"
  std::string ToString() const;

  friend bool operator==(const Workload&, const Workload&) = default;
  friend auto operator<=>(const Workload&, const Workload&) = default;
};

// Checks the kind-specific shape rules and feature ranges.
absl::Status ValidateWorkload(const Workload& w, const Schema& schema1,
                              const Schema& schema2);

// Number of cells of each side: product of the involved cardinalities.
int64_t SideCells(const Schema& schema, const std::vector<int>& features);

// Mixed-radix cell index of a record restricted to `features`; the last
// listed feature varies fastest.
int64_t SideCellIndex(const Table& table, int row,
                      const std::vector<int>& features);

// Probability vector over the cells of a workload. Cross cells are ordered
// side1-major: cell = side1_index * side2_cells + side2_index.
struct MarginalVector {
  Workload workload;
  std::vector<int> cardinalities;  // side1 features, then side2 features
  std::vector<double> probs;

  int64_t num_cells() const { return static_cast<int64_t>(probs.size()); }
  // Reference values (side1 codes followed by side2 codes) of a cell.
  std::vector<int> Cell(int64_t index) const;
};

// All cross workloads with |side1| + |side2| == k and both sides non-empty.
// The order is lexicographic over the combined feature list in which table1
// features precede table2 features.
std::vector<Workload> EnumerateCrossWorkloads(const Schema& schema1,
                                              const Schema& schema2, int k);

// All single-table workloads of order k on one table.
std::vector<Workload> EnumerateTableWorkloads(const Schema& schema, int k,
                                              WorkloadKind kind);

// Marginal over the related pairs of the adjacency, normalized by its edge
// count. Fails when there are no edges.
absl::StatusOr<MarginalVector> ComputeCrossMarginal(
    const Table& table1, const Table& table2, const BiAdjacency& adjacency,
    const Workload& w);
inline absl::StatusOr<MarginalVector> ComputeCrossMarginal(
    const RelationalDatabase& db, const Workload& w) {
  return ComputeCrossMarginal(db.table1, db.table2, db.adjacency, w);
}

// Single-table marginal normalized by the row count.
absl::StatusOr<MarginalVector> ComputeTableMarginal(const Table& table,
                                                    const Workload& w);

// Dense row-major real matrix.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;

  DenseMatrix() = default;
  DenseMatrix(int r, int c)
      : rows(r), cols(c), values(static_cast<size_t>(r) * c, 0.0) {}
  double at(int i, int j) const {
    return values[static_cast<size_t>(i) * cols + j];
  }
};

// A family of queries sharing one partition of the rows and one of the
// columns. Query (a, b) has u = [row_cell == a] and v = [col_cell == b];
// a label of -1 belongs to no query. A workload is one block; an arbitrary
// single (u, v) query is a block with one cell per side.
struct QueryBlock {
  std::vector<int> row_cell;
  std::vector<int> col_cell;
  int cells1 = 0;
  int cells2 = 0;

  int64_t num_queries() const { return int64_t{cells1} * cells2; }
};

// Stack of queries over an n1 x n2 (slice of a) bi-adjacency matrix, in
// block order and side1-major inside each block.
class QueryMatrix {
 public:
  QueryMatrix(int n1, int n2) : n1_(n1), n2_(n2) {}

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int64_t num_queries() const { return num_queries_; }
  bool empty() const { return num_queries_ == 0; }
  const std::vector<QueryBlock>& blocks() const { return blocks_; }

  absl::Status AddBlock(QueryBlock block);
  // One query from binary indicator vectors.
  absl::Status AddQuery(std::span<const uint8_t> u, std::span<const uint8_t> v);
  // Appends every query of a cross workload on the given tables.
  absl::Status AddCrossWorkload(const Table& table1, const Table& table2,
                                const Workload& w);

  // Indicator vectors of query q, for inspection and tests.
  std::pair<std::vector<uint8_t>, std::vector<uint8_t>> Indicators(
      int64_t q) const;

  // Q b for a row-major flattened n1 x n2 matrix b (no normalization).
  std::vector<double> Apply(std::span<const double> b) const;
  // Q^T r as an n1 x n2 matrix, accumulated block by block.
  DenseMatrix ApplyTranspose(std::span<const double> r) const;

  // Restriction to a sub-block: every indicator is sliced by `sel`.
  absl::StatusOr<QueryMatrix> Slice(const SliceSelector& sel) const;

 private:
  int n1_;
  int n2_;
  std::vector<QueryBlock> blocks_;
  // Blocks with identical column partitions form a group; block k belongs
  // to group block_group_[k], whose first block is group_first_block_[g].
  std::vector<int> block_group_;
  std::vector<int> group_first_block_;
  int64_t num_queries_ = 0;
};

// Per-query value u^T B v / target_sum.
absl::StatusOr<std::vector<double>> QueryValuesWeighted(
    const QueryMatrix& q, const WeightedBiAdjacency& b);

// Q^T r; fails when r does not have one entry per query.
absl::StatusOr<DenseMatrix> ApplyQt(const QueryMatrix& q,
                                    std::span<const double> r);

// Total variation distance 0.5 * sum |p_i - q_i|.
absl::StatusOr<double> TvScore(const MarginalVector& p,
                               const MarginalVector& q);

// (1 / n_workloads) * ||syn - real||^2.
absl::StatusOr<double> WorkloadMse(std::span<const double> answers_syn,
                                   std::span<const double> answers_real,
                                   int n_workloads);

}  // namespace dprel

#endif  // DPREL_MARGINALS_H_

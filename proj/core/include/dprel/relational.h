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

// Data model for two-table relational databases. A database is a bipartite
// graph: the rows of each table are nodes and the relationships are the
// edges of a sparse binary bi-adjacency matrix.

#ifndef DPREL_RELATIONAL_H_
#define DPREL_RELATIONAL_H_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dprel {

struct Feature {
  std::string name;
  int cardinality = 1;

  friend bool operator==(const Feature&, const Feature&) = default;
};

// Ordered list of categorical features. Names are unique and every
// cardinality is at least one.
class Schema {
 public:
  Schema() = default;

  static absl::StatusOr<Schema> Create(std::vector<Feature> features);

  int num_features() const { return static_cast<int>(features_.size()); }
  const std::vector<Feature>& features() const { return features_; }
  const Feature& feature(int f) const { return features_[f]; }
  int cardinality(int f) const { return features_[f].cardinality; }

  // Index of the feature called `name`, if any.
  std::optional<int> FindFeature(const std::string& name) const;

  friend bool operator==(const Schema&, const Schema&) = default;

 private:
  explicit Schema(std::vector<Feature> features)
      : features_(std::move(features)) {}

  std::vector<Feature> features_;
};

// Categorical records stored row-major as integer codes, one per feature.
class Table {
 public:
  Table() = default;

  static absl::StatusOr<Table> Create(Schema schema,
                                      const std::vector<std::vector<int>>& rows);
  // `codes` is row-major with schema.num_features() entries per row.
  static absl::StatusOr<Table> FromCodes(Schema schema, std::vector<int> codes);

  const Schema& schema() const { return schema_; }
  int num_rows() const { return num_rows_; }
  int num_features() const { return schema_.num_features(); }

  int code(int row, int feature) const {
    return codes_[static_cast<size_t>(row) * num_features() + feature];
  }
  std::span<const int> row(int r) const {
    return {codes_.data() + static_cast<size_t>(r) * num_features(),
            static_cast<size_t>(num_features())};
  }
  const std::vector<int>& codes() const { return codes_; }

  friend bool operator==(const Table&, const Table&) = default;

 private:
  Table(Schema schema, std::vector<int> codes, int num_rows)
      : schema_(std::move(schema)), codes_(std::move(codes)),
        num_rows_(num_rows) {}

  Schema schema_;
  std::vector<int> codes_;
  int num_rows_ = 0;
};

using Edge = std::pair<int, int>;

// Dense row-major 0/1 matrix; the output of slicing a BiAdjacency and the
// patch type accepted by Reinsert.
struct BinaryMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<uint8_t> values;

  BinaryMatrix() = default;
  BinaryMatrix(int r, int c)
      : rows(r), cols(c), values(static_cast<size_t>(r) * c, 0) {}

  uint8_t at(int i, int j) const {
    return values[static_cast<size_t>(i) * cols + j];
  }
  void set(int i, int j, bool v) {
    values[static_cast<size_t>(i) * cols + j] = v ? 1 : 0;
  }
  int64_t count() const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;
};

// Sparse binary n1 x n2 relationship matrix kept as a sorted set of
// (row, column) pairs. The edge count is always the size of the set.
class BiAdjacency {
 public:
  BiAdjacency() = default;
  BiAdjacency(int n1, int n2) : n1_(n1), n2_(n2) {}

  // Fails on out-of-range or duplicate pairs.
  static absl::StatusOr<BiAdjacency> Create(int n1, int n2,
                                            const std::vector<Edge>& edges);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int64_t num_edges() const { return static_cast<int64_t>(edges_.size()); }
  const std::set<Edge>& edges() const { return edges_; }

  bool Contains(int i, int j) const { return edges_.count({i, j}) > 0; }
  // Returns false if the edge was already present.
  absl::StatusOr<bool> AddEdge(int i, int j);
  bool RemoveEdge(int i, int j) { return edges_.erase({i, j}) > 0; }

  // Column indices linked to row `i`, ascending.
  std::vector<int> RowNeighbors(int i) const;

  std::vector<int> RowDegrees() const;
  std::vector<int> ColDegrees() const;

  friend bool operator==(const BiAdjacency&, const BiAdjacency&) = default;

 private:
  int n1_ = 0;
  int n2_ = 0;
  std::set<Edge> edges_;
};

enum class RelationshipKind { kManyToMany, kOneToMany };

std::string RelationshipKindName(RelationshipKind kind);
absl::StatusOr<RelationshipKind> ParseRelationshipKind(const std::string& s);

// Two tables linked by a bi-adjacency matrix. For one-to-many databases
// table1 holds the child records.
struct RelationalDatabase {
  Table table1;
  Table table2;
  BiAdjacency adjacency;
  RelationshipKind kind = RelationshipKind::kManyToMany;

  // Checks that the adjacency dimensions match the row counts. Referential
  // integrity is checked separately by ValidateIntegrity.
  static absl::StatusOr<RelationalDatabase> Create(Table table1, Table table2,
                                                   BiAdjacency adjacency,
                                                   RelationshipKind kind);

  friend bool operator==(const RelationalDatabase&,
                         const RelationalDatabase&) = default;
};

// Dense relaxed bi-adjacency matrix with entries in [0, 1] and a fixed
// total mass. Stored row-major so that the flattening is vec() by rows.
class WeightedBiAdjacency {
 public:
  static constexpr double kBoxTolerance = 1e-9;
  static constexpr double kSumTolerance = 1e-6;

  WeightedBiAdjacency() = default;

  static absl::StatusOr<WeightedBiAdjacency> Create(int rows, int cols,
                                                    std::vector<double> values,
                                                    double target_sum);
  // Uses the sum of the entries as the target.
  static absl::StatusOr<WeightedBiAdjacency> FromValues(
      int rows, int cols, std::vector<double> values);
  static WeightedBiAdjacency FromBinary(const BinaryMatrix& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double target_sum() const { return target_sum_; }
  double at(int i, int j) const {
    return values_[static_cast<size_t>(i) * cols_ + j];
  }
  const std::vector<double>& values() const { return values_; }

 private:
  WeightedBiAdjacency(int rows, int cols, std::vector<double> values,
                      double target_sum)
      : rows_(rows), cols_(cols), values_(std::move(values)),
        target_sum_(target_sum) {}

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> values_;
  double target_sum_ = 0.0;
};

// Sorted, unique row and column index lists selecting a sub-block.
struct SliceSelector {
  std::vector<int> rows;
  std::vector<int> cols;

  static absl::StatusOr<SliceSelector> Create(std::vector<int> rows,
                                              std::vector<int> cols, int n1,
                                              int n2);
  static SliceSelector Full(int n1, int n2);

  int num_rows() const { return static_cast<int>(rows.size()); }
  int num_cols() const { return static_cast<int>(cols.size()); }
};

// Largest number of edges incident to a single record on either side.
int MaxDegree(const BiAdjacency& adjacency);
inline int MaxDegree(const RelationalDatabase& db) {
  return MaxDegree(db.adjacency);
}

// Entry (i, j) of the result is entry (sel.rows[i], sel.cols[j]) of the input.
absl::StatusOr<BinaryMatrix> Slice(const BiAdjacency& m,
                                   const SliceSelector& sel);
absl::StatusOr<WeightedBiAdjacency> Slice(const WeightedBiAdjacency& m,
                                          const SliceSelector& sel);

// Replaces the cells of the selector's row x column product by `patch`.
// Cells outside the product are left untouched.
absl::Status Reinsert(const SliceSelector& sel, const BinaryMatrix& patch,
                      BiAdjacency* m);
absl::Status Reinsert(const SliceSelector& sel,
                      const WeightedBiAdjacency& patch, WeightedBiAdjacency* m);

struct IntegrityReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// One-to-many: every child (table1 row) has exactly one parent.
// Many-to-many: no pair is linked twice and all endpoints are in range.
IntegrityReport ValidateIntegrity(const RelationalDatabase& db);

}  // namespace dprel

#endif  // DPREL_RELATIONAL_H_

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

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace dprel {
namespace {

absl::Status CheckFeatures(const std::vector<int>& features,
                           const Schema& schema, const char* side) {
  for (size_t k = 0; k < features.size(); ++k) {
    if (features[k] < 0 || features[k] >= schema.num_features()) {
      return absl::OutOfRangeError(
          absl::StrCat(side, " feature ", features[k], " out of range"));
    }
    if (k > 0 && features[k] <= features[k - 1]) {
      return absl::InvalidArgumentError(
          absl::StrCat(side, " features must be ascending and unique"));
    }
  }
  return absl::OkStatus();
}

std::vector<int> Cardinalities(const Schema& schema,
                               const std::vector<int>& features) {
  std::vector<int> out;
  out.reserve(features.size());
  for (int f : features) out.push_back(schema.cardinality(f));
  return out;
}

// Calls visit(subset) for each k-subset of [0, n) in lexicographic order.
template <typename Visit>
void ForEachCombination(int n, int k, Visit visit) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::string Workload::ToString() const {
  const std::string body = absl::StrCat("[", absl::StrJoin(side1, ","), "]x[",
                                        absl::StrJoin(side2, ","), "]");
  switch (kind) {
    case WorkloadKind::kTable1:
      return absl::StrCat("t1", body);
    case WorkloadKind::kTable2:
      return absl::StrCat("t2", body);
    case WorkloadKind::kCross:
      break;
  }
  return body;
}

absl::Status ValidateWorkload(const Workload& w, const Schema& schema1,
                              const Schema& schema2) {
  if (absl::Status s = CheckFeatures(w.side1, schema1, "table1"); !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckFeatures(w.side2, schema2, "table2"); !s.ok()) {
    return s;
  }
  switch (w.kind) {
    case WorkloadKind::kCross:
      if (w.side1.empty() || w.side2.empty()) {
        return absl::InvalidArgumentError(
            "cross workloads need features on both sides");
      }
      break;
    case WorkloadKind::kTable1:
      if (w.side1.empty() || !w.side2.empty()) {
        return absl::InvalidArgumentError(
            "table1 workloads use table1 features only");
      }
      break;
    case WorkloadKind::kTable2:
      if (w.side2.empty() || !w.side1.empty()) {
        return absl::InvalidArgumentError(
            "table2 workloads use table2 features only");
      }
      break;
  }
  return absl::OkStatus();
}

int64_t SideCells(const Schema& schema, const std::vector<int>& features) {
  int64_t cells = 1;
  for (int f : features) cells *= schema.cardinality(f);
  return cells;
}

int64_t SideCellIndex(const Table& table, int row,
                      const std::vector<int>& features) {
  int64_t index = 0;
  for (int f : features) {
    index = index * table.schema().cardinality(f) + table.code(row, f);
  }
  return index;
}

std::vector<int> MarginalVector::Cell(int64_t index) const {
  std::vector<int> codes(cardinalities.size());
  for (size_t k = cardinalities.size(); k-- > 0;) {
    codes[k] = static_cast<int>(index % cardinalities[k]);
    index /= cardinalities[k];
  }
  return codes;
}

std::vector<Workload> EnumerateCrossWorkloads(const Schema& schema1,
                                              const Schema& schema2, int k) {
  const int d1 = schema1.num_features();
  const int d2 = schema2.num_features();
  std::vector<Workload> out;
  ForEachCombination(d1 + d2, k, [&](const std::vector<int>& subset) {
    Workload w;
    for (int f : subset) {
      if (f < d1) {
        w.side1.push_back(f);
      } else {
        w.side2.push_back(f - d1);
      }
    }
    if (!w.side1.empty() && !w.side2.empty()) out.push_back(std::move(w));
  });
  return out;
}

std::vector<Workload> EnumerateTableWorkloads(const Schema& schema, int k,
                                              WorkloadKind kind) {
  std::vector<Workload> out;
  ForEachCombination(schema.num_features(), k,
                     [&](const std::vector<int>& subset) {
                       Workload w;
                       w.kind = kind;
                       if (kind == WorkloadKind::kTable2) {
                         w.side2 = subset;
                       } else {
                         w.side1 = subset;
                       }
                       out.push_back(std::move(w));
                     });
  return out;
}

absl::StatusOr<MarginalVector> ComputeCrossMarginal(
    const Table& table1, const Table& table2, const BiAdjacency& adjacency,
    const Workload& w) {
  if (w.kind != WorkloadKind::kCross) {
    return absl::InvalidArgumentError("expected a cross workload");
  }
  if (absl::Status s = ValidateWorkload(w, table1.schema(), table2.schema());
      !s.ok()) {
    return s;
  }
  if (adjacency.n1() != table1.num_rows() ||
      adjacency.n2() != table2.num_rows()) {
    return absl::InvalidArgumentError("adjacency does not match the tables");
  }
  if (adjacency.num_edges() == 0) {
    return absl::FailedPreconditionError(
        "no relationships: cross marginals need at least one edge");
  }
  MarginalVector out;
  out.workload = w;
  out.cardinalities = Cardinalities(table1.schema(), w.side1);
  for (int c : Cardinalities(table2.schema(), w.side2)) {
    out.cardinalities.push_back(c);
  }
  const int64_t cells2 = SideCells(table2.schema(), w.side2);
  out.probs.assign(SideCells(table1.schema(), w.side1) * cells2, 0.0);
  std::vector<int64_t> row_index(table1.num_rows());
  for (int i = 0; i < table1.num_rows(); ++i) {
    row_index[i] = SideCellIndex(table1, i, w.side1);
  }
  std::vector<int64_t> col_index(table2.num_rows());
  for (int j = 0; j < table2.num_rows(); ++j) {
    col_index[j] = SideCellIndex(table2, j, w.side2);
  }
  for (const auto& [i, j] : adjacency.edges()) {
    out.probs[row_index[i] * cells2 + col_index[j]] += 1.0;
  }
  const double m = static_cast<double>(adjacency.num_edges());
  for (double& p : out.probs) p /= m;
  return out;
}

absl::StatusOr<MarginalVector> ComputeTableMarginal(const Table& table,
                                                    const Workload& w) {
  if (w.kind == WorkloadKind::kCross) {
    return absl::InvalidArgumentError("expected a single-table workload");
  }
  const std::vector<int>& features =
      w.kind == WorkloadKind::kTable1 ? w.side1 : w.side2;
  if (absl::Status s = CheckFeatures(features, table.schema(), "table");
      !s.ok()) {
    return s;
  }
  if (table.num_rows() == 0) {
    return absl::FailedPreconditionError("table has no rows");
  }
  MarginalVector out;
  out.workload = w;
  out.cardinalities = Cardinalities(table.schema(), features);
  out.probs.assign(SideCells(table.schema(), features), 0.0);
  for (int r = 0; r < table.num_rows(); ++r) {
    out.probs[SideCellIndex(table, r, features)] += 1.0;
  }
  for (double& p : out.probs) p /= table.num_rows();
  return out;
}

absl::Status QueryMatrix::AddBlock(QueryBlock block) {
  if (static_cast<int>(block.row_cell.size()) != n1_ ||
      static_cast<int>(block.col_cell.size()) != n2_) {
    return absl::InvalidArgumentError(absl::StrCat(
        "query block labels have lengths ", block.row_cell.size(), " and ",
        block.col_cell.size(), "; expected ", n1_, " and ", n2_));
  }
  for (int a : block.row_cell) {
    if (a < -1 || a >= block.cells1) {
      return absl::OutOfRangeError("row label outside the block's cells");
    }
  }
  for (int b : block.col_cell) {
    if (b < -1 || b >= block.cells2) {
      return absl::OutOfRangeError("column label outside the block's cells");
    }
  }
  int group = 0;
  while (group < static_cast<int>(group_first_block_.size())) {
    const QueryBlock& first = blocks_[group_first_block_[group]];
    if (first.cells2 == block.cells2 && first.col_cell == block.col_cell) break;
    ++group;
  }
  if (group == static_cast<int>(group_first_block_.size())) {
    group_first_block_.push_back(static_cast<int>(blocks_.size()));
  }
  block_group_.push_back(group);
  num_queries_ += block.num_queries();
  blocks_.push_back(std::move(block));
  return absl::OkStatus();
}

absl::Status QueryMatrix::AddQuery(std::span<const uint8_t> u,
                                   std::span<const uint8_t> v) {
  QueryBlock block;
  block.cells1 = 1;
  block.cells2 = 1;
  block.row_cell.reserve(u.size());
  for (uint8_t x : u) {
    if (x > 1) return absl::InvalidArgumentError("indicator must be binary");
    block.row_cell.push_back(x ? 0 : -1);
  }
  block.col_cell.reserve(v.size());
  for (uint8_t x : v) {
    if (x > 1) return absl::InvalidArgumentError("indicator must be binary");
    block.col_cell.push_back(x ? 0 : -1);
  }
  return AddBlock(std::move(block));
}

absl::Status QueryMatrix::AddCrossWorkload(const Table& table1,
                                           const Table& table2,
                                           const Workload& w) {
  if (w.kind != WorkloadKind::kCross) {
    return absl::InvalidArgumentError("expected a cross workload");
  }
  if (absl::Status s = ValidateWorkload(w, table1.schema(), table2.schema());
      !s.ok()) {
    return s;
  }
  QueryBlock block;
  block.cells1 = static_cast<int>(SideCells(table1.schema(), w.side1));
  block.cells2 = static_cast<int>(SideCells(table2.schema(), w.side2));
  block.row_cell.resize(table1.num_rows());
  for (int i = 0; i < table1.num_rows(); ++i) {
    block.row_cell[i] = static_cast<int>(SideCellIndex(table1, i, w.side1));
  }
  block.col_cell.resize(table2.num_rows());
  for (int j = 0; j < table2.num_rows(); ++j) {
    block.col_cell[j] = static_cast<int>(SideCellIndex(table2, j, w.side2));
  }
  return AddBlock(std::move(block));
}

std::pair<std::vector<uint8_t>, std::vector<uint8_t>> QueryMatrix::Indicators(
    int64_t q) const {
  std::vector<uint8_t> u(n1_, 0);
  std::vector<uint8_t> v(n2_, 0);
  for (const QueryBlock& block : blocks_) {
    if (q >= block.num_queries()) {
      q -= block.num_queries();
      continue;
    }
    const int a = static_cast<int>(q / block.cells2);
    const int b = static_cast<int>(q % block.cells2);
    for (int i = 0; i < n1_; ++i) u[i] = block.row_cell[i] == a;
    for (int j = 0; j < n2_; ++j) v[j] = block.col_cell[j] == b;
    break;
  }
  return {std::move(u), std::move(v)};
}

std::vector<double> QueryMatrix::Apply(std::span<const double> b) const {
  std::vector<double> out(num_queries_, 0.0);
  std::vector<int64_t> offsets(blocks_.size(), 0);
  for (size_t k = 1; k < blocks_.size(); ++k) {
    offsets[k] = offsets[k - 1] + blocks_[k - 1].num_queries();
  }
  // Blocks sharing a column partition share the pass over b: first sum each
  // row into column cells, then gather the rows into row cells per block.
  std::vector<double> row_sums;
  for (size_t g = 0; g < group_first_block_.size(); ++g) {
    const QueryBlock& first = blocks_[group_first_block_[g]];
    const int c2 = first.cells2;
    row_sums.assign(static_cast<size_t>(n1_) * c2, 0.0);
    for (int i = 0; i < n1_; ++i) {
      double* acc = row_sums.data() + static_cast<size_t>(i) * c2;
      const double* row = b.data() + static_cast<size_t>(i) * n2_;
      for (int j = 0; j < n2_; ++j) {
        const int c = first.col_cell[j];
        if (c >= 0) acc[c] += row[j];
      }
    }
    for (size_t k = 0; k < blocks_.size(); ++k) {
      if (block_group_[k] != static_cast<int>(g)) continue;
      const QueryBlock& block = blocks_[k];
      double* acc = out.data() + offsets[k];
      for (int i = 0; i < n1_; ++i) {
        const int a = block.row_cell[i];
        if (a < 0) continue;
        const double* sums = row_sums.data() + static_cast<size_t>(i) * c2;
        double* dst = acc + int64_t{a} * c2;
        for (int c = 0; c < c2; ++c) dst[c] += sums[c];
      }
    }
  }
  return out;
}

DenseMatrix QueryMatrix::ApplyTranspose(std::span<const double> r) const {
  DenseMatrix out(n1_, n2_);
  std::vector<int64_t> offsets(blocks_.size(), 0);
  for (size_t k = 1; k < blocks_.size(); ++k) {
    offsets[k] = offsets[k - 1] + blocks_[k - 1].num_queries();
  }
  // Per column partition, collect each row's coefficient for every column
  // cell, then scatter once over the matrix.
  std::vector<double> row_coef;
  for (size_t g = 0; g < group_first_block_.size(); ++g) {
    const QueryBlock& first = blocks_[group_first_block_[g]];
    const int c2 = first.cells2;
    row_coef.assign(static_cast<size_t>(n1_) * c2, 0.0);
    for (size_t k = 0; k < blocks_.size(); ++k) {
      if (block_group_[k] != static_cast<int>(g)) continue;
      const QueryBlock& block = blocks_[k];
      const double* coef = r.data() + offsets[k];
      for (int i = 0; i < n1_; ++i) {
        const int a = block.row_cell[i];
        if (a < 0) continue;
        const double* src = coef + int64_t{a} * c2;
        double* dst = row_coef.data() + static_cast<size_t>(i) * c2;
        for (int c = 0; c < c2; ++c) dst[c] += src[c];
      }
    }
    for (int i = 0; i < n1_; ++i) {
      const double* coefs = row_coef.data() + static_cast<size_t>(i) * c2;
      double* row = out.values.data() + static_cast<size_t>(i) * n2_;
      for (int j = 0; j < n2_; ++j) {
        const int c = first.col_cell[j];
        if (c >= 0) row[j] += coefs[c];
      }
    }
  }
  return out;
}

absl::StatusOr<QueryMatrix> QueryMatrix::Slice(const SliceSelector& sel) const {
  absl::StatusOr<SliceSelector> checked =
      SliceSelector::Create(sel.rows, sel.cols, n1_, n2_);
  if (!checked.ok()) return checked.status();
  QueryMatrix out(sel.num_rows(), sel.num_cols());
  for (const QueryBlock& block : blocks_) {
    QueryBlock sliced;
    sliced.cells1 = block.cells1;
    sliced.cells2 = block.cells2;
    sliced.row_cell.reserve(sel.rows.size());
    for (int i : sel.rows) sliced.row_cell.push_back(block.row_cell[i]);
    sliced.col_cell.reserve(sel.cols.size());
    for (int j : sel.cols) sliced.col_cell.push_back(block.col_cell[j]);
    if (absl::Status s = out.AddBlock(std::move(sliced)); !s.ok()) return s;
  }
  return out;
}

absl::StatusOr<std::vector<double>> QueryValuesWeighted(
    const QueryMatrix& q, const WeightedBiAdjacency& b) {
  if (b.rows() != q.n1() || b.cols() != q.n2()) {
    return absl::InvalidArgumentError(
        "weighted matrix dimensions do not match the queries");
  }
  if (b.target_sum() == 0.0) {
    return absl::FailedPreconditionError(
        "target_sum is zero; query values are undefined");
  }
  std::vector<double> values = q.Apply(b.values());
  for (double& v : values) v /= b.target_sum();
  return values;
}

absl::StatusOr<DenseMatrix> ApplyQt(const QueryMatrix& q,
                                    std::span<const double> r) {
  if (static_cast<int64_t>(r.size()) != q.num_queries()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "coefficient vector has ", r.size(), " entries for ",
        q.num_queries(), " queries"));
  }
  return q.ApplyTranspose(r);
}

absl::StatusOr<double> TvScore(const MarginalVector& p,
                               const MarginalVector& q) {
  if (!(p.workload == q.workload) || p.probs.size() != q.probs.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("workload mismatch: ", p.workload.ToString(), " vs ",
                     q.workload.ToString()));
  }
  double total = 0.0;
  for (size_t k = 0; k < p.probs.size(); ++k) {
    total += std::abs(p.probs[k] - q.probs[k]);
  }
  return 0.5 * total;
}

absl::StatusOr<double> WorkloadMse(std::span<const double> answers_syn,
                                   std::span<const double> answers_real,
                                   int n_workloads) {
  if (answers_syn.size() != answers_real.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("answer vectors have lengths ", answers_syn.size(),
                     " and ", answers_real.size()));
  }
  if (n_workloads <= 0) {
    return absl::InvalidArgumentError("n_workloads must be positive");
  }
  double sq = 0.0;
  for (size_t k = 0; k < answers_syn.size(); ++k) {
    const double d = answers_syn[k] - answers_real[k];
    sq += d * d;
  }
  return sq / n_workloads;
}

}  // namespace dprel

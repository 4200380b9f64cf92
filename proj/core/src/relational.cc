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

#include "dprel/relational.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "absl/strings/str_cat.h"

namespace dprel {
namespace {

absl::Status CheckSorted(const std::vector<int>& idx, int bound,
                         const char* what) {
  for (size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= bound) {
      return absl::OutOfRangeError(absl::StrCat(what, " index ", idx[k],
                                                " out of range [0, ", bound,
                                                ")"));
    }
    if (k > 0 && idx[k] <= idx[k - 1]) {
      return absl::InvalidArgumentError(
          absl::StrCat(what, " indices must be sorted and unique"));
    }
  }
  return absl::OkStatus();
}

absl::Status CheckSelectorFits(const SliceSelector& sel, int n1, int n2) {
  if (absl::Status s = CheckSorted(sel.rows, n1, "row"); !s.ok()) return s;
  return CheckSorted(sel.cols, n2, "column");
}

// Position of `value` in the sorted list, or -1.
int Position(const std::vector<int>& sorted, int value) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
  if (it == sorted.end() || *it != value) return -1;
  return static_cast<int>(it - sorted.begin());
}

}  // namespace

absl::StatusOr<Schema> Schema::Create(std::vector<Feature> features) {
  std::unordered_set<std::string> seen;
  for (const Feature& f : features) {
    if (f.cardinality < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("feature '", f.name, "' has cardinality ",
                       f.cardinality, "; must be >= 1"));
    }
    if (!seen.insert(f.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate feature name '", f.name, "'"));
    }
  }
  return Schema(std::move(features));
}

std::optional<int> Schema::FindFeature(const std::string& name) const {
  for (int f = 0; f < num_features(); ++f) {
    if (features_[f].name == name) return f;
  }
  return std::nullopt;
}

absl::StatusOr<Table> Table::Create(Schema schema,
                                    const std::vector<std::vector<int>>& rows) {
  std::vector<int> codes;
  codes.reserve(rows.size() * schema.num_features());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != schema.num_features()) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", r, " has ", rows[r].size(),
                       " codes; schema has ", schema.num_features(),
                       " features"));
    }
    codes.insert(codes.end(), rows[r].begin(), rows[r].end());
  }
  return FromCodes(std::move(schema), std::move(codes));
}

absl::StatusOr<Table> Table::FromCodes(Schema schema, std::vector<int> codes) {
  const int d = schema.num_features();
  if (d == 0) {
    if (!codes.empty()) {
      return absl::InvalidArgumentError("codes given for an empty schema");
    }
    return Table(std::move(schema), std::move(codes), 0);
  }
  if (codes.size() % d != 0) {
    return absl::InvalidArgumentError(
        "code count is not a multiple of the feature count");
  }
  for (size_t k = 0; k < codes.size(); ++k) {
    const int f = static_cast<int>(k % d);
    if (codes[k] < 0 || codes[k] >= schema.cardinality(f)) {
      return absl::OutOfRangeError(absl::StrCat(
          "row ", k / d, " feature '", schema.feature(f).name, "': code ",
          codes[k], " outside [0, ", schema.cardinality(f), ")"));
    }
  }
  const int n = static_cast<int>(codes.size() / d);
  return Table(std::move(schema), std::move(codes), n);
}

int64_t BinaryMatrix::count() const {
  return std::accumulate(values.begin(), values.end(), int64_t{0});
}

absl::StatusOr<BiAdjacency> BiAdjacency::Create(
    int n1, int n2, const std::vector<Edge>& edges) {
  if (n1 < 0 || n2 < 0) {
    return absl::InvalidArgumentError("negative adjacency dimension");
  }
  BiAdjacency adj(n1, n2);
  for (const auto& [i, j] : edges) {
    absl::StatusOr<bool> added = adj.AddEdge(i, j);
    if (!added.ok()) return added.status();
    if (!*added) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate edge (", i, ", ", j, ")"));
    }
  }
  return adj;
}

absl::StatusOr<bool> BiAdjacency::AddEdge(int i, int j) {
  if (i < 0 || i >= n1_ || j < 0 || j >= n2_) {
    return absl::OutOfRangeError(absl::StrCat("edge (", i, ", ", j,
                                              ") outside ", n1_, "x", n2_));
  }
  return edges_.insert({i, j}).second;
}

std::vector<int> BiAdjacency::RowNeighbors(int i) const {
  std::vector<int> out;
  for (auto it = edges_.lower_bound({i, std::numeric_limits<int>::min()});
       it != edges_.end() && it->first == i; ++it) {
    out.push_back(it->second);
  }
  return out;
}

std::vector<int> BiAdjacency::RowDegrees() const {
  std::vector<int> deg(n1_, 0);
  for (const auto& [i, j] : edges_) ++deg[i];
  return deg;
}

std::vector<int> BiAdjacency::ColDegrees() const {
  std::vector<int> deg(n2_, 0);
  for (const auto& [i, j] : edges_) ++deg[j];
  return deg;
}

std::string RelationshipKindName(RelationshipKind kind) {
  return kind == RelationshipKind::kOneToMany ? "one-to-many" : "many-to-many";
}

absl::StatusOr<RelationshipKind> ParseRelationshipKind(const std::string& s) {
  if (s == "many-to-many") return RelationshipKind::kManyToMany;
  if (s == "one-to-many") return RelationshipKind::kOneToMany;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown relationship kind '", s,
      "'; expected many-to-many or one-to-many"));
}

absl::StatusOr<RelationalDatabase> RelationalDatabase::Create(
    Table table1, Table table2, BiAdjacency adjacency, RelationshipKind kind) {
  if (adjacency.n1() != table1.num_rows() ||
      adjacency.n2() != table2.num_rows()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "adjacency is ", adjacency.n1(), "x", adjacency.n2(),
        " but tables have ", table1.num_rows(), " and ", table2.num_rows(),
        " rows"));
  }
  return RelationalDatabase{std::move(table1), std::move(table2),
                            std::move(adjacency), kind};
}

absl::StatusOr<WeightedBiAdjacency> WeightedBiAdjacency::Create(
    int rows, int cols, std::vector<double> values, double target_sum) {
  if (rows < 0 || cols < 0 ||
      values.size() != static_cast<size_t>(rows) * cols) {
    return absl::InvalidArgumentError("value count does not match dimensions");
  }
  if (!(target_sum >= 0.0)) {
    return absl::InvalidArgumentError("target_sum must be non-negative");
  }
  double sum = 0.0;
  for (double v : values) {
    if (!(v >= -kBoxTolerance && v <= 1.0 + kBoxTolerance)) {
      return absl::OutOfRangeError(
          absl::StrCat("weighted entry ", v, " outside [0, 1]"));
    }
    sum += v;
  }
  if (std::abs(sum - target_sum) > kSumTolerance) {
    return absl::InvalidArgumentError(absl::StrCat(
        "entries sum to ", sum, " but target_sum is ", target_sum));
  }
  return WeightedBiAdjacency(rows, cols, std::move(values), target_sum);
}

absl::StatusOr<WeightedBiAdjacency> WeightedBiAdjacency::FromValues(
    int rows, int cols, std::vector<double> values) {
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  return Create(rows, cols, std::move(values), sum);
}

WeightedBiAdjacency WeightedBiAdjacency::FromBinary(const BinaryMatrix& m) {
  std::vector<double> v(m.values.begin(), m.values.end());
  return WeightedBiAdjacency(m.rows, m.cols, std::move(v),
                             static_cast<double>(m.count()));
}

absl::StatusOr<SliceSelector> SliceSelector::Create(std::vector<int> rows,
                                                    std::vector<int> cols,
                                                    int n1, int n2) {
  SliceSelector sel{std::move(rows), std::move(cols)};
  if (absl::Status s = CheckSelectorFits(sel, n1, n2); !s.ok()) return s;
  return sel;
}

SliceSelector SliceSelector::Full(int n1, int n2) {
  SliceSelector sel;
  sel.rows.resize(n1);
  sel.cols.resize(n2);
  std::iota(sel.rows.begin(), sel.rows.end(), 0);
  std::iota(sel.cols.begin(), sel.cols.end(), 0);
  return sel;
}

int MaxDegree(const BiAdjacency& adjacency) {
  int best = 0;
  for (int d : adjacency.RowDegrees()) best = std::max(best, d);
  for (int d : adjacency.ColDegrees()) best = std::max(best, d);
  return best;
}

absl::StatusOr<BinaryMatrix> Slice(const BiAdjacency& m,
                                   const SliceSelector& sel) {
  if (absl::Status s = CheckSelectorFits(sel, m.n1(), m.n2()); !s.ok()) {
    return s;
  }
  BinaryMatrix out(sel.num_rows(), sel.num_cols());
  for (int r = 0; r < sel.num_rows(); ++r) {
    const int i = sel.rows[r];
    for (auto it = m.edges().lower_bound({i, std::numeric_limits<int>::min()});
         it != m.edges().end() && it->first == i; ++it) {
      const int c = Position(sel.cols, it->second);
      if (c >= 0) out.set(r, c, true);
    }
  }
  return out;
}

absl::StatusOr<WeightedBiAdjacency> Slice(const WeightedBiAdjacency& m,
                                          const SliceSelector& sel) {
  if (absl::Status s = CheckSelectorFits(sel, m.rows(), m.cols()); !s.ok()) {
    return s;
  }
  std::vector<double> v;
  v.reserve(static_cast<size_t>(sel.num_rows()) * sel.num_cols());
  for (int i : sel.rows) {
    for (int j : sel.cols) v.push_back(m.at(i, j));
  }
  return WeightedBiAdjacency::FromValues(sel.num_rows(), sel.num_cols(),
                                         std::move(v));
}

absl::Status Reinsert(const SliceSelector& sel, const BinaryMatrix& patch,
                      BiAdjacency* m) {
  if (absl::Status s = CheckSelectorFits(sel, m->n1(), m->n2()); !s.ok()) {
    return s;
  }
  if (patch.rows != sel.num_rows() || patch.cols != sel.num_cols()) {
    return absl::InvalidArgumentError(
        absl::StrCat("patch is ", patch.rows, "x", patch.cols,
                     " but selector is ", sel.num_rows(), "x",
                     sel.num_cols()));
  }
  for (int r = 0; r < sel.num_rows(); ++r) {
    const int i = sel.rows[r];
    for (int j : m->RowNeighbors(i)) {
      if (Position(sel.cols, j) >= 0) m->RemoveEdge(i, j);
    }
    for (int c = 0; c < sel.num_cols(); ++c) {
      if (patch.at(r, c)) m->AddEdge(i, sel.cols[c]).IgnoreError();
    }
  }
  return absl::OkStatus();
}

absl::Status Reinsert(const SliceSelector& sel,
                      const WeightedBiAdjacency& patch,
                      WeightedBiAdjacency* m) {
  if (absl::Status s = CheckSelectorFits(sel, m->rows(), m->cols()); !s.ok()) {
    return s;
  }
  if (patch.rows() != sel.num_rows() || patch.cols() != sel.num_cols()) {
    return absl::InvalidArgumentError("patch dimensions do not match selector");
  }
  std::vector<double> v = m->values();
  for (int r = 0; r < sel.num_rows(); ++r) {
    for (int c = 0; c < sel.num_cols(); ++c) {
      v[static_cast<size_t>(sel.rows[r]) * m->cols() + sel.cols[c]] =
          patch.at(r, c);
    }
  }
  absl::StatusOr<WeightedBiAdjacency> out =
      WeightedBiAdjacency::FromValues(m->rows(), m->cols(), std::move(v));
  if (!out.ok()) return out.status();
  *m = *std::move(out);
  return absl::OkStatus();
}

IntegrityReport ValidateIntegrity(const RelationalDatabase& db) {
  IntegrityReport report;
  const BiAdjacency& adj = db.adjacency;
  if (adj.n1() != db.table1.num_rows() || adj.n2() != db.table2.num_rows()) {
    report.violations.push_back("adjacency dimensions do not match tables");
    return report;
  }
  // The edge set cannot hold a pair twice; this guards the endpoints.
  for (const auto& [i, j] : adj.edges()) {
    if (i < 0 || i >= adj.n1() || j < 0 || j >= adj.n2()) {
      report.violations.push_back(
          absl::StrCat("edge (", i, ", ", j, ") out of range"));
    }
  }
  if (db.kind == RelationshipKind::kOneToMany) {
    const std::vector<int> deg = adj.RowDegrees();
    for (int i = 0; i < adj.n1(); ++i) {
      if (deg[i] == 0) {
        report.violations.push_back(
            absl::StrCat("orphaned child row ", i));
      } else if (deg[i] > 1) {
        report.violations.push_back(absl::StrCat(
            "child row ", i, " has ", deg[i], " parents; expected exactly 1"));
      }
    }
  }
  return report;
}

}  // namespace dprel

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

#include "dprel/baseline.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dprel/privacy.h"

namespace dprel {
namespace {

// Clips at zero and renormalizes; an all-zero vector becomes uniform.
void ClipAndNormalize(std::vector<double>& p) {
  double total = 0.0;
  for (double& v : p) {
    v = std::max(v, 0.0);
    total += v;
  }
  if (total <= 0.0) {
    std::fill(p.begin(), p.end(), 1.0 / p.size());
    return;
  }
  for (double& v : p) v /= total;
}

int Draw(const double* p, int size, Rng& rng) {
  double u = Uniform01(rng);
  int last = 0;
  for (int k = 0; k < size; ++k) {
    if (p[k] <= 0.0) continue;
    last = k;
    if (u < p[k]) return k;
    u -= p[k];
  }
  return last;
}

}  // namespace

absl::StatusOr<BaselineResult> GenerateTable(const Table& real,
                                             const BaselineConfig& cfg,
                                             Rng& rng) {
  if (real.num_rows() == 0) {
    return absl::InvalidArgumentError("input table is empty");
  }
  if (cfg.n_out < 1) return absl::InvalidArgumentError("n_out must be >= 1");
  if (cfg.order != 1 && cfg.order != 2) {
    return absl::InvalidArgumentError("order must be 1 or 2");
  }
  absl::StatusOr<double> rho = EpsDeltaToZcdp(cfg.eps, cfg.delta);
  if (!rho.ok()) return rho.status();

  const Schema& schema = real.schema();
  const int d = schema.num_features();
  const int n = real.num_rows();
  BaselineResult result;
  if (d == 0) {
    absl::StatusOr<Table> empty = Table::FromCodes(schema, {});
    if (!empty.ok()) return empty.status();
    result.table = *std::move(empty);
    return result;
  }

  // One row moves two cells of a normalized marginal by 1/n each.
  const double l2_sensitivity = std::sqrt(2.0) / n;
  const double rho_each = *rho / d;
  const double sigma = l2_sensitivity / std::sqrt(2.0 * rho_each);
  std::normal_distribution<double> noise(0.0, sigma);

  // marginals[f]: 1-way of feature f (order 1, or f == 0), otherwise the
  // joint of (f - 1, f) laid out with f varying fastest.
  std::vector<std::vector<double>> marginals(d);
  for (int f = 0; f < d; ++f) {
    const bool pair = cfg.order == 2 && f > 0;
    const int card = schema.cardinality(f);
    const int prev_card = pair ? schema.cardinality(f - 1) : 1;
    std::vector<double>& p = marginals[f];
    p.assign(static_cast<size_t>(prev_card) * card, 0.0);
    for (int r = 0; r < n; ++r) {
      const int prev = pair ? real.code(r, f - 1) : 0;
      p[static_cast<size_t>(prev) * card + real.code(r, f)] += 1.0 / n;
    }
    for (double& v : p) v += noise(rng);
    ClipAndNormalize(p);
  }
  result.rho_charged = rho_each * d;

  std::vector<int> codes(static_cast<size_t>(cfg.n_out) * d);
  std::vector<double> conditional;
  for (int r = 0; r < cfg.n_out; ++r) {
    int* row = codes.data() + static_cast<size_t>(r) * d;
    for (int f = 0; f < d; ++f) {
      const int card = schema.cardinality(f);
      if (cfg.order == 1 || f == 0) {
        row[f] = Draw(marginals[f].data(), card, rng);
        continue;
      }
      conditional.assign(marginals[f].begin() + static_cast<size_t>(row[f - 1]) * card,
                         marginals[f].begin() + static_cast<size_t>(row[f - 1] + 1) * card);
      ClipAndNormalize(conditional);
      row[f] = Draw(conditional.data(), card, rng);
    }
  }
  absl::StatusOr<Table> table = Table::FromCodes(schema, std::move(codes));
  if (!table.ok()) return table.status();
  result.table = *std::move(table);
  return result;
}

}  // namespace dprel

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

#include "dprel/ubs.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace dprel {
namespace {

constexpr double kBoxTolerance = 1e-9;
constexpr double kSumTolerancePerEntry = 1e-6;
// Rounding slack when deciding whether a group is full.
constexpr double kMergeSlack = 1e-12;

GroupPartition Merge(std::span<const double> x) {
  GroupPartition g;
  g.boundaries.push_back(0);
  double running = 0.0;
  bool open = false;
  for (size_t i = 0; i < x.size(); ++i) {
    if (open && running + x[i] > 1.0 + kMergeSlack) {
      g.group_sums.push_back(running);
      g.boundaries.push_back(static_cast<int>(i));
      running = 0.0;
    }
    running += x[i];
    open = true;
  }
  if (open) {
    g.group_sums.push_back(running);
    g.boundaries.push_back(static_cast<int>(x.size()));
  }
  return g;
}

// Index in [begin, end) drawn proportionally to x.
int DrawProportional(std::span<const double> x, int begin, int end, Rng& rng) {
  double total = 0.0;
  for (int i = begin; i < end; ++i) total += x[i];
  double u = Uniform01(rng) * total;
  int last = begin;
  for (int i = begin; i < end; ++i) {
    if (x[i] <= 0.0) continue;
    last = i;
    if (u < x[i]) return i;
    u -= x[i];
  }
  return last;
}

struct Level {
  std::vector<double> x;
  GroupPartition groups;
};

}  // namespace

absl::StatusOr<GroupPartition> MergeGroups(std::span<const double> x) {
  for (double v : x) {
    if (!(v >= -kBoxTolerance && v <= 1.0 + kBoxTolerance)) {
      return absl::OutOfRangeError(
          absl::StrCat("entry ", v, " outside [0, 1]"));
    }
  }
  return Merge(x);
}

absl::StatusOr<std::vector<int>> Ubs(std::span<const double> x_in, int64_t m,
                                     Rng& rng) {
  const int64_t n = static_cast<int64_t>(x_in.size());
  if (m < 0 || m > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot select ", m, " of ", n, " indices"));
  }
  std::vector<double> x(x_in.begin(), x_in.end());
  double sum = 0.0;
  for (double& v : x) {
    if (!(v >= -kBoxTolerance && v <= 1.0 + kBoxTolerance)) {
      return absl::OutOfRangeError(
          absl::StrCat("entry ", v, " outside [0, 1]"));
    }
    v = std::clamp(v, 0.0, 1.0);
    sum += v;
  }
  double residual = static_cast<double>(m) - sum;
  if (std::abs(residual) >
      kSumTolerancePerEntry * std::max<int64_t>(n, 1)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "entries sum to ", sum, " but ", m, " indices were requested"));
  }
  // Move the rounding residual onto interior coordinates in index order.
  for (int64_t i = 0; i < n && residual != 0.0; ++i) {
    if (x[i] <= 0.0 || x[i] >= 1.0) continue;
    const double moved = std::clamp(x[i] + residual, 0.0, 1.0) - x[i];
    x[i] += moved;
    residual -= moved;
  }

  std::vector<Level> levels;
  int64_t target = m;
  std::vector<int> selected;
  while (true) {
    const int64_t size = static_cast<int64_t>(x.size());
    if (target == 0) break;
    if (target == 1) {
      selected.push_back(DrawProportional(x, 0, static_cast<int>(size), rng));
      break;
    }
    if (target == size) {
      selected.resize(size);
      for (int i = 0; i < size; ++i) selected[i] = i;
      break;
    }
    GroupPartition groups = Merge(x);
    const int64_t next_target = groups.num_groups() - target;
    if (next_target < 0 || next_target >= target) {
      return absl::InternalError(absl::StrCat(
          "merging produced ", groups.num_groups(), " groups for target ",
          target));
    }
    std::vector<double> complement(groups.num_groups());
    for (int j = 0; j < groups.num_groups(); ++j) {
      complement[j] = std::clamp(1.0 - groups.group_sums[j], 0.0, 1.0);
    }
    levels.push_back({std::move(x), std::move(groups)});
    x = std::move(complement);
    target = next_target;
  }

  // Unwind: the indices chosen one level down are the groups to exclude.
  for (auto level = levels.rbegin(); level != levels.rend(); ++level) {
    std::vector<uint8_t> excluded(level->groups.num_groups(), 0);
    for (int j : selected) excluded[j] = 1;
    selected.clear();
    for (int j = 0; j < level->groups.num_groups(); ++j) {
      if (excluded[j]) continue;
      selected.push_back(DrawProportional(level->x,
                                          level->groups.boundaries[j],
                                          level->groups.boundaries[j + 1],
                                          rng));
    }
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

absl::StatusOr<BinaryMatrix> SampleBiAdjacency(const WeightedBiAdjacency& b,
                                               int64_t m_syn, Rng& rng) {
  const double n = static_cast<double>(b.values().size());
  if (std::abs(b.target_sum() - static_cast<double>(m_syn)) >
      kSumTolerancePerEntry * std::max(n, 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("weighted matrix has mass ", b.target_sum(),
                     " but m_syn = ", m_syn));
  }
  absl::StatusOr<std::vector<int>> picked = Ubs(b.values(), m_syn, rng);
  if (!picked.ok()) return picked.status();
  BinaryMatrix out(b.rows(), b.cols());
  for (int k : *picked) out.values[k] = 1;
  return out;
}

absl::StatusOr<BinaryMatrix> CategoricalRound(const WeightedBiAdjacency& b,
                                              Rng& rng) {
  BinaryMatrix out(b.rows(), b.cols());
  const std::vector<double>& v = b.values();
  for (int i = 0; i < b.rows(); ++i) {
    const int begin = i * b.cols();
    const int end = begin + b.cols();
    double row_sum = 0.0;
    for (int k = begin; k < end; ++k) {
      if (v[k] < -kBoxTolerance) {
        return absl::InvalidArgumentError(
            absl::StrCat("row ", i, " has a negative entry"));
      }
      row_sum += std::max(v[k], 0.0);
    }
    if (std::abs(row_sum - 1.0) > 1e-6) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", i, " sums to ", row_sum, ", not 1"));
    }
    double u = Uniform01(rng) * row_sum;
    int pick = -1;
    for (int k = begin; k < end; ++k) {
      if (v[k] <= 0.0) continue;
      pick = k;
      if (u < v[k]) break;
      u -= v[k];
    }
    out.values[pick] = 1;
  }
  return out;
}

}  // namespace dprel

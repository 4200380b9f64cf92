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

// Rounding a relaxed bi-adjacency matrix back to a binary one.
//
// Ubs() draws exactly m distinct indices from x in [0,1]^N with sum(x) = m
// such that index i is selected with probability x_i. It merges consecutive
// entries into groups of mass at most one, picks which L - m groups to drop
// by recursing on the complements 1 - group_sum, and then draws one index
// from every surviving group proportionally to x. The complement problem
// has at most 2/3 of the entries of its parent, so the total work is O(N).

#ifndef DPREL_UBS_H_
#define DPREL_UBS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dprel/relational.h"
#include "dprel/rng.h"

namespace dprel {

// Contiguous groups [boundaries[j], boundaries[j + 1]) of the input indices.
struct GroupPartition {
  std::vector<int> boundaries;  // z_0 = 0 < z_1 < ... < z_L = N
  std::vector<double> group_sums;

  int num_groups() const { return static_cast<int>(group_sums.size()); }
};

// Greedy left-to-right grouping: an index joins the current group while the
// running mass stays at most one, otherwise it opens a new group.
absl::StatusOr<GroupPartition> MergeGroups(std::span<const double> x);

// Exactly m distinct indices, ascending, with P(i selected) = x_i.
// sum(x) must equal m up to 1e-6 * N; the residual is moved onto the
// largest interior coordinate before sampling.
absl::StatusOr<std::vector<int>> Ubs(std::span<const double> x, int64_t m,
                                     Rng& rng);

// Row-major flattening of `b` through Ubs(); the result has exactly m_syn
// ones and E[result] = b entrywise.
absl::StatusOr<BinaryMatrix> SampleBiAdjacency(const WeightedBiAdjacency& b,
                                               int64_t m_syn, Rng& rng);

// One-to-many rounding: every row must be a probability vector; each row
// independently receives a single one at a column drawn from it.
absl::StatusOr<BinaryMatrix> CategoricalRound(const WeightedBiAdjacency& b,
                                              Rng& rng);

}  // namespace dprel

#endif  // DPREL_UBS_H_

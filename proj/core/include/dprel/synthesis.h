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

// Learning the relationships between two independently generated synthetic
// tables. Each iteration
//   1. picks K not-yet-measured cross workloads with the exponential
//      mechanism, scored by total variation against the current synthetic
//      database,
//   2. releases their marginals on the private database with the Gaussian
//      mechanism,
//   3. keeps the measured workloads the synthetic database currently
//      answers worst, and
//   4. for a few disjoint random slices of the adjacency, solves the relaxed
//      fitting problem restricted to the slice, rounds the result with the
//      unbiased sampler and writes it back.
// Every slice keeps its own edge count, so the total stays at m_syn.

#ifndef DPREL_SYNTHESIS_H_
#define DPREL_SYNTHESIS_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dprel/marginals.h"
#include "dprel/privacy.h"
#include "dprel/projection.h"
#include "dprel/relational.h"
#include "dprel/rng.h"

namespace dprel {

struct SynthesisConfig {
  double eps_rel = 1.0;
  double delta_rel = 1e-6;
  int T = 15;  // iterations
  int K = 3;   // workloads selected per iteration
  double alpha = 0.2;  // share of each round spent on selection
  int k = 3;           // marginal order
  int64_t m_syn = 0;   // synthetic edge count; public
  // Slice dimensions; 0 selects the whole synthetic table on that side.
  int slice_rows = 0;
  int slice_cols = 0;
  int n_slices = 1;
  double min_related_fraction = 0.2;
  int top_error_workloads = 8;
  PgdConfig pgd;
  uint64_t seed = 0;
  RelationshipKind kind = RelationshipKind::kManyToMany;
  // Candidates scored per selection round; 0 scores every candidate.
  int workload_subsample = 0;
  // Public degree bound; 0 uses the maximum degree of the private data.
  int d_max = 0;
};

absl::Status ValidateSynthesisConfig(const SynthesisConfig& cfg, int n1_syn,
                                     int n2_syn);

struct MeasuredWorkload {
  Workload workload;
  int iteration = 0;
  std::vector<double> noisy_answers;
};

struct SliceLog {
  int rows = 0;
  int cols = 0;
  int64_t edges = 0;
  bool skipped = false;
  double objective_before = 0.0;   // the current binary slice
  double objective_relaxed = 0.0;  // the PGD solution
  double objective_after = 0.0;    // the sampled binary slice
};

struct IterationLog {
  int iteration = 0;
  std::vector<Workload> selected;
  std::vector<std::vector<double>> noisy_answers;
  std::vector<Workload> optimized;  // the top-error workloads used by PGD
  std::vector<SliceLog> slices;
  double rho_spent = 0.0;
};

struct RunState {
  std::vector<MeasuredWorkload> measured;
  BiAdjacency adjacency;
  BudgetLedger ledger;
  int iteration = 0;
  std::vector<IterationLog> log;
};

// m_syn distinct uniformly random cells (many-to-many), or one uniformly
// random parent per child row (one-to-many, requires m_syn == n1).
absl::StatusOr<BiAdjacency> InitializeAdjacency(int n1, int n2, int64_t m_syn,
                                                RelationshipKind kind,
                                                Rng& rng);

struct SliceShape {
  int rows = 0;
  int cols = 0;
  double min_related_fraction = 0.0;
};

// Random sorted selector of shape.rows rows and shape.cols columns. At least
// ceil(min_related_fraction * size) of each side are records that currently
// have an edge, when that many exist; the rest are uniform. Rows and columns
// flagged in the blocked masks are never chosen. Falls back to fewer
// records, with a warning, when not enough are available.
absl::StatusOr<SliceSelector> DrawSlice(
    const BiAdjacency& adjacency, const SliceShape& shape, Rng& rng,
    const std::vector<uint8_t>& blocked_rows = {},
    const std::vector<uint8_t>& blocked_cols = {});

struct WorkloadError {
  Workload workload;
  double l1_error = 0.0;
  double squared_error = 0.0;
};

struct EvaluationReport {
  int k = 0;
  double average_error = 0.0;  // mean L1 marginal error over workloads
  double mse = 0.0;            // per-workload mean squared error
  std::vector<WorkloadError> per_workload;
};

// Noise-free comparison over every cross k-way workload. A synthetic
// database without edges answers every query with zero.
absl::StatusOr<EvaluationReport> Evaluate(const RelationalDatabase& real,
                                          const RelationalDatabase& syn,
                                          int k);

// Holds the private database, the synthetic tables and the cached real
// marginals for one run.
class RelationshipSynthesizer {
 public:
  static absl::StatusOr<RelationshipSynthesizer> Create(
      const RelationalDatabase& real, Table syn_table1, Table syn_table2,
      const SynthesisConfig& cfg);

  const SynthesisConfig& config() const { return cfg_; }
  const Sensitivity& sensitivity() const { return sensitivity_; }
  const std::vector<Workload>& workloads() const { return workloads_; }
  const Table& syn_table1() const { return syn1_; }
  const Table& syn_table2() const { return syn2_; }

  // Budget ledger plus the initial adjacency.
  absl::StatusOr<RunState> Initialize() const;
  // Advances the run by one iteration.
  absl::Status RunIteration(RunState* state) const;

 private:
  RelationshipSynthesizer() = default;

  absl::StatusOr<MarginalVector> SyntheticMarginal(const BiAdjacency& adj,
                                                   const Workload& w) const;
  absl::Status OptimizeSlice(const std::vector<const MeasuredWorkload*>& top,
                             const SliceSelector& sel, Rng& rng,
                             RunState* state, SliceLog* log) const;

  RelationalDatabase real_;
  Table syn1_;
  Table syn2_;
  SynthesisConfig cfg_;
  Sensitivity sensitivity_;
  std::vector<Workload> workloads_;
  std::vector<MarginalVector> real_marginals_;
  RngStreams streams_{0};
};

struct SynthesisResult {
  RelationalDatabase synthetic;
  BudgetReport budget;
  EvaluationReport evaluation;
  std::vector<IterationLog> iterations;
  int64_t m_real = 0;
  int d_max = 0;
};

// Runs cfg.T iterations and evaluates the output against the private
// database. The evaluation reads private data and is a diagnostic, not part
// of the private release.
absl::StatusOr<SynthesisResult> Synthesize(const RelationalDatabase& real,
                                           const Table& syn_table1,
                                           const Table& syn_table2,
                                           const SynthesisConfig& cfg);

}  // namespace dprel

#endif  // DPREL_SYNTHESIS_H_

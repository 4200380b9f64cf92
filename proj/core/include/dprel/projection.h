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

// Projected gradient descent for the relaxed relationship problem
//
//   minimize   f(b) = || Q b / m - a ||^2
//   subject to 0 <= b <= 1,  sum(b) = m
//
// where b is the row-major flattening of a weighted bi-adjacency matrix.
// The Euclidean projection onto the constraint set (the capped simplex) is
// x_i = clamp(b_i + y, 0, 1) for the unique-in-value shift y that makes the
// entries sum to m, so each projection is a one-dimensional root find.

#ifndef DPREL_PROJECTION_H_
#define DPREL_PROJECTION_H_

#include <optional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dprel/marginals.h"
#include "dprel/relational.h"
#include "dprel/rng.h"

namespace dprel {

enum class PgdInit {
  kWarm,             // project the caller's initial values
  kUniformFeasible,  // start from the constant vector m / N
};

struct PgdConfig {
  int iterations = 200;
  int power_iterations = 100;
  // Sum tolerance of each projection, per coordinate: the root find stops
  // once |sum(x) - m| <= projection_tolerance * N.
  double projection_tolerance = 1e-9;
  std::optional<double> step_size_override;
  PgdInit init = PgdInit::kWarm;
  // Keep f(b_t) for every iterate in PgdResult::objective_trace.
  bool record_trace = false;
};

absl::Status ValidatePgdConfig(const PgdConfig& cfg);

struct CappedSimplexProjection {
  std::vector<double> x;
  double shift = 0.0;  // the y with x_i = clamp(b_i + y, 0, 1)
};

// Euclidean projection of `b` onto {0 <= x <= 1, sum(x) = m}. The box holds
// exactly; the sum is repaired after the root find by moving the residual
// onto strictly interior coordinates. `shift_hint`, when inside the
// bracket, is the first shift tried.
absl::StatusOr<CappedSimplexProjection> ProjectCappedSimplex(
    std::span<const double> b, double m, double tol,
    std::optional<double> shift_hint = std::nullopt);

// Largest singular value of Q by power iteration on Q^T Q, using only the
// factored matrix-vector products. Returns 0 for an empty or all-zero Q.
double PowerIteration(const QueryMatrix& q, int iterations, Rng& rng);

// f(b) = || Q b / m - a ||^2.
double PgdObjective(const QueryMatrix& q, std::span<const double> a_hat,
                    double m, std::span<const double> b);

struct PgdResult {
  WeightedBiAdjacency weights;
  double objective = 0.0;
  double initial_objective = 0.0;
  double step_size = 0.0;
  double sigma_max = 0.0;
  std::vector<double> objective_trace;  // f(b_0), ..., f(b_T) when recorded
};

// Runs cfg.iterations steps of b <- P(b - eta grad f(b)) with
// eta = (m / sigma_max)^2 / 2 unless overridden.
absl::StatusOr<PgdResult> PgdSolve(const QueryMatrix& q,
                                   std::span<const double> a_hat,
                                   double m_syn, const PgdConfig& cfg,
                                   std::span<const double> init, Rng& rng);

// Same iteration with every row constrained to sum to one (each child
// record has exactly one parent); m_syn is the row count.
absl::StatusOr<PgdResult> PgdSolveOneToMany(const QueryMatrix& q,
                                            std::span<const double> a_hat,
                                            const PgdConfig& cfg,
                                            std::span<const double> init,
                                            Rng& rng);

}  // namespace dprel

#endif  // DPREL_PROJECTION_H_

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

#include "dprel/projection.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "absl/strings/str_cat.h"

namespace dprel {
namespace {

constexpr int kMaxRootSteps = 400;
constexpr int kMaxRepairRounds = 16;

struct ShiftSum {
  double total = 0.0;     // sum_i clamp(b_i + y, 0, 1)
  int free = 0;           // coordinates strictly inside the box
  int upper = 0;          // coordinates clamped at 1
  double free_base = 0.0;  // sum of b_i over the free coordinates
};

ShiftSum EvaluateShift(std::span<const double> b, double y) {
  ShiftSum s;
  for (double bi : b) {
    const double v = bi + y;
    if (v <= 0.0) continue;
    if (v >= 1.0) {
      s.total += 1.0;
      ++s.upper;
    } else {
      s.total += v;
      ++s.free;
      s.free_base += bi;
    }
  }
  return s;
}

double Norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

absl::Status CheckPgdInputs(const QueryMatrix& q,
                            std::span<const double> a_hat,
                            std::span<const double> init) {
  if (static_cast<int64_t>(a_hat.size()) != q.num_queries()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "answer vector has ", a_hat.size(), " entries for ", q.num_queries(),
        " queries"));
  }
  if (init.size() != static_cast<size_t>(q.n1()) * q.n2()) {
    return absl::InvalidArgumentError(
        "initial values do not match the query dimensions");
  }
  return absl::OkStatus();
}

// Shared descent loop; `project` maps a point onto the feasible set.
template <typename Project>
absl::StatusOr<PgdResult> Descend(const QueryMatrix& q,
                                  std::span<const double> a_hat, double m_syn,
                                  const PgdConfig& cfg,
                                  std::vector<double> b, Rng& rng,
                                  Project project) {
  PgdResult result;
  result.initial_objective = PgdObjective(q, a_hat, m_syn, b);
  if (cfg.record_trace) result.objective_trace.push_back(result.initial_objective);

  if (!q.empty()) {
    result.sigma_max = PowerIteration(q, cfg.power_iterations, rng);
  }
  if (result.sigma_max > 0.0 || cfg.step_size_override.has_value()) {
    result.step_size =
        cfg.step_size_override.value_or(0.5 * (m_syn / result.sigma_max) *
                                        (m_syn / result.sigma_max));
    std::vector<double> residual;
    for (int t = 0; t < cfg.iterations; ++t) {
      residual = q.Apply(b);
      for (size_t k = 0; k < residual.size(); ++k) {
        residual[k] = residual[k] / m_syn - a_hat[k];
      }
      const DenseMatrix grad = q.ApplyTranspose(residual);
      const double scale = result.step_size * 2.0 / m_syn;
      for (size_t k = 0; k < b.size(); ++k) b[k] -= scale * grad.values[k];
      absl::Status s = project(b);
      if (!s.ok()) return s;
      if (cfg.record_trace) {
        result.objective_trace.push_back(PgdObjective(q, a_hat, m_syn, b));
      }
    }
  }
  result.objective = PgdObjective(q, a_hat, m_syn, b);
  absl::StatusOr<WeightedBiAdjacency> weights =
      WeightedBiAdjacency::Create(q.n1(), q.n2(), std::move(b), m_syn);
  if (!weights.ok()) return weights.status();
  result.weights = *std::move(weights);
  return result;
}

}  // namespace

absl::Status ValidatePgdConfig(const PgdConfig& cfg) {
  if (cfg.iterations < 1) {
    return absl::InvalidArgumentError("PGD needs at least one iteration");
  }
  if (cfg.power_iterations < 1) {
    return absl::InvalidArgumentError(
        "power iteration needs at least one step");
  }
  if (!(cfg.projection_tolerance > 0.0)) {
    return absl::InvalidArgumentError("projection_tolerance must be positive");
  }
  if (cfg.step_size_override.has_value() && !(*cfg.step_size_override > 0.0)) {
    return absl::InvalidArgumentError("step size override must be positive");
  }
  return absl::OkStatus();
}

absl::StatusOr<CappedSimplexProjection> ProjectCappedSimplex(
    std::span<const double> b, double m, double tol,
    std::optional<double> shift_hint) {
  const double n = static_cast<double>(b.size());
  if (!(m >= -tol && m <= n + tol)) {
    return absl::InvalidArgumentError(
        absl::StrCat("target sum ", m, " outside [0, ", b.size(), "]"));
  }
  if (!(tol > 0.0)) return absl::InvalidArgumentError("tol must be positive");
  CappedSimplexProjection out;
  if (b.empty()) return out;
  const auto [min_it, max_it] = std::minmax_element(b.begin(), b.end());
  if (m <= 0.0) {
    out.x.assign(b.size(), 0.0);
    out.shift = -*max_it;
    return out;
  }
  if (m >= n) {
    out.x.assign(b.size(), 1.0);
    out.shift = 1.0 - *min_it;
    return out;
  }

  // Safeguarded Newton iteration on the piecewise-linear, non-decreasing
  // sum(y). A Newton step solves the linear piece at y exactly; it is
  // replaced by bisection when it leaves the bracket or stalls.
  double lo = -*max_it;
  double hi = 1.0 - *min_it;
  double y = shift_hint.has_value() && *shift_hint > lo && *shift_hint < hi
                 ? *shift_hint
                 : 0.5 * (lo + hi);
  double width_before_newton = hi - lo;
  bool last_was_newton = false;
  for (int step = 0; step < kMaxRootSteps; ++step) {
    const ShiftSum at = EvaluateShift(b, y);
    if (std::abs(at.total - m) <= tol) break;
    (at.total < m ? lo : hi) = y;
    if (!(hi > lo)) break;
    const bool stalled =
        last_was_newton && hi - lo > 0.5 * width_before_newton;
    double next = 0.5 * (lo + hi);
    last_was_newton = false;
    if (at.free > 0 && !stalled) {
      const double newton = (m - at.upper - at.free_base) / at.free;
      if (newton > lo && newton < hi) {
        width_before_newton = hi - lo;
        next = newton;
        last_was_newton = true;
      }
    }
    if (next == y) break;
    y = next;
  }

  out.shift = y;
  out.x.resize(b.size());
  double sum = 0.0;
  for (size_t i = 0; i < b.size(); ++i) {
    out.x[i] = std::clamp(b[i] + y, 0.0, 1.0);
    sum += out.x[i];
  }
  for (int round = 0; round < kMaxRepairRounds && sum != m; ++round) {
    int interior = 0;
    for (double v : out.x) interior += (v > 0.0 && v < 1.0);
    if (interior == 0) break;
    const double delta = (m - sum) / interior;
    sum = 0.0;
    for (double& v : out.x) {
      if (v > 0.0 && v < 1.0) v = std::clamp(v + delta, 0.0, 1.0);
      sum += v;
    }
  }
  return out;
}

double PowerIteration(const QueryMatrix& q, int iterations, Rng& rng) {
  const size_t n = static_cast<size_t>(q.n1()) * q.n2();
  if (q.empty() || n == 0) return 0.0;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = normal(rng);
  double norm = Norm2(v);
  if (norm == 0.0) return 0.0;
  for (double& x : v) x /= norm;
  for (int t = 0; t < iterations; ++t) {
    DenseMatrix w = q.ApplyTranspose(q.Apply(v));
    norm = Norm2(w.values);
    if (norm == 0.0) return 0.0;
    for (size_t k = 0; k < n; ++k) v[k] = w.values[k] / norm;
  }
  return Norm2(q.Apply(v));
}

double PgdObjective(const QueryMatrix& q, std::span<const double> a_hat,
                    double m, std::span<const double> b) {
  const std::vector<double> qb = q.Apply(b);
  double f = 0.0;
  for (size_t k = 0; k < qb.size(); ++k) {
    const double r = qb[k] / m - a_hat[k];
    f += r * r;
  }
  return f;
}

absl::StatusOr<PgdResult> PgdSolve(const QueryMatrix& q,
                                   std::span<const double> a_hat,
                                   double m_syn, const PgdConfig& cfg,
                                   std::span<const double> init, Rng& rng) {
  if (absl::Status s = ValidatePgdConfig(cfg); !s.ok()) return s;
  if (absl::Status s = CheckPgdInputs(q, a_hat, init); !s.ok()) return s;
  if (!(m_syn > 0.0)) {
    return absl::InvalidArgumentError("m_syn must be positive");
  }
  const double n = static_cast<double>(init.size());
  if (m_syn > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "m_syn = ", m_syn, " exceeds the ", init.size(), " available cells"));
  }
  const double tol = cfg.projection_tolerance * n;
  // Consecutive iterates need similar shifts; start each root find from the
  // previous one.
  std::optional<double> shift;
  auto project = [&](std::vector<double>& b) -> absl::Status {
    absl::StatusOr<CappedSimplexProjection> p =
        ProjectCappedSimplex(b, m_syn, tol, shift);
    if (!p.ok()) return p.status();
    shift = p->shift;
    b = std::move(p->x);
    return absl::OkStatus();
  };
  std::vector<double> b;
  if (cfg.init == PgdInit::kUniformFeasible) {
    b.assign(init.size(), m_syn / n);
  } else {
    b.assign(init.begin(), init.end());
    if (absl::Status s = project(b); !s.ok()) return s;
  }
  return Descend(q, a_hat, m_syn, cfg, std::move(b), rng, project);
}

absl::StatusOr<PgdResult> PgdSolveOneToMany(const QueryMatrix& q,
                                            std::span<const double> a_hat,
                                            const PgdConfig& cfg,
                                            std::span<const double> init,
                                            Rng& rng) {
  if (absl::Status s = ValidatePgdConfig(cfg); !s.ok()) return s;
  if (absl::Status s = CheckPgdInputs(q, a_hat, init); !s.ok()) return s;
  const int rows = q.n1();
  const int cols = q.n2();
  if (rows == 0 || cols == 0) {
    return absl::InvalidArgumentError("one-to-many PGD needs a non-empty slice");
  }
  const double tol = cfg.projection_tolerance * cols;
  // Rows are independent; each is projected onto its own unit capped simplex.
  auto project = [&](std::vector<double>& b) -> absl::Status {
    for (int i = 0; i < rows; ++i) {
      std::span<double> row(b.data() + static_cast<size_t>(i) * cols, cols);
      absl::StatusOr<CappedSimplexProjection> p =
          ProjectCappedSimplex(row, 1.0, tol);
      if (!p.ok()) return p.status();
      std::copy(p->x.begin(), p->x.end(), row.begin());
    }
    return absl::OkStatus();
  };
  std::vector<double> b;
  if (cfg.init == PgdInit::kUniformFeasible) {
    b.assign(init.size(), 1.0 / cols);
  } else {
    b.assign(init.begin(), init.end());
    if (absl::Status s = project(b); !s.ok()) return s;
  }
  return Descend(q, a_hat, static_cast<double>(rows), cfg, std::move(b), rng,
                 project);
}

}  // namespace dprel

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

#include "dprel/privacy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "absl/strings/str_cat.h"

namespace dprel {

absl::StatusOr<double> EpsDeltaToZcdp(double eps, double delta) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive and finite, got ", eps));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must be in (0, 1), got ", delta));
  }
  const double log_inv_delta = -std::log(delta);
  // sqrt(a + eps) - sqrt(a) written without cancellation.
  const double root_gap =
      eps / (std::sqrt(log_inv_delta + eps) + std::sqrt(log_inv_delta));
  return root_gap * root_gap;
}

double ZcdpToEps(double rho, double delta) {
  return rho + 2.0 * std::sqrt(rho * -std::log(delta));
}

PrivacyCost ComposeTotal(PrivacyCost table1, PrivacyCost table2,
                         PrivacyCost relationships) {
  return {table1.eps + table2.eps + relationships.eps,
          table1.delta + table2.delta + relationships.delta};
}

absl::StatusOr<Sensitivity> Sensitivity::Create(double m, int d_max) {
  if (!(m > 0.0)) {
    return absl::InvalidArgumentError(
        "edge count must be positive to bound sensitivities");
  }
  if (d_max < 1) {
    return absl::InvalidArgumentError("d_max must be at least 1");
  }
  return Sensitivity{m, d_max};
}

absl::StatusOr<BudgetLedger> BudgetLedger::Create(double eps_rel,
                                                  double delta_rel,
                                                  int workloads_per_iteration,
                                                  int iterations,
                                                  double alpha) {
  absl::StatusOr<double> rho = EpsDeltaToZcdp(eps_rel, delta_rel);
  if (!rho.ok()) return rho.status();
  return FromRho(*rho, delta_rel, workloads_per_iteration, iterations, alpha);
}

absl::StatusOr<BudgetLedger> BudgetLedger::FromRho(
    double rho_total, double delta, int workloads_per_iteration,
    int iterations, double alpha) {
  if (!(rho_total >= 0.0)) {
    return absl::InvalidArgumentError("rho must be non-negative");
  }
  if (workloads_per_iteration < 0 || iterations < 0) {
    return absl::InvalidArgumentError("K and T must be non-negative");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must be in [0, 1], got ", alpha));
  }
  BudgetLedger ledger;
  ledger.rho_total_ = rho_total;
  ledger.delta_ = delta;
  ledger.alpha_ = alpha;
  ledger.k_ = workloads_per_iteration;
  ledger.t_ = iterations;
  const double rounds =
      static_cast<double>(workloads_per_iteration) * iterations;
  ledger.eps0_ = rounds > 0 ? std::sqrt(2.0 * rho_total / rounds) : 0.0;
  return ledger;
}

absl::Status BudgetLedger::Charge(double rho) {
  if (rho < 0.0) return absl::InvalidArgumentError("negative charge");
  if (!CanAfford(rho)) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "privacy budget exhausted: spent ", rho_spent_, " of ", rho_total_,
        ", requested ", rho));
  }
  rho_spent_ += rho;
  return absl::OkStatus();
}

BudgetReport BudgetLedger::Report() const {
  BudgetReport r;
  r.rho_total = rho_total_;
  r.eps0 = eps0_;
  r.alpha = alpha_;
  r.workloads_per_iteration = k_;
  r.iterations = t_;
  r.per_iteration_spend = PerIterationSpend();
  r.rho_spent = rho_spent_;
  r.delta = delta_;
  r.eps_equivalent_at_delta = ZcdpToEps(rho_total_, delta_);
  return r;
}

absl::StatusOr<int> ExponentialSelect(std::span<const double> scores,
                                      const Sensitivity& sens, double alpha,
                                      double eps0, Rng& rng,
                                      std::span<const uint8_t> excluded) {
  if (scores.empty()) {
    return absl::InvalidArgumentError("no candidates to select from");
  }
  if (!excluded.empty() && excluded.size() != scores.size()) {
    return absl::InvalidArgumentError("exclusion mask has the wrong length");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0) || !(eps0 >= 0.0)) {
    return absl::InvalidArgumentError("alpha must be in [0, 1], eps0 >= 0");
  }
  const double coef = std::sqrt(alpha) * eps0 / sens.score();
  auto allowed = [&](size_t i) { return excluded.empty() || !excluded[i]; };

  double max_logit = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < scores.size(); ++i) {
    if (allowed(i)) max_logit = std::max(max_logit, coef * scores[i]);
  }
  if (max_logit == -std::numeric_limits<double>::infinity()) {
    return absl::FailedPreconditionError("every candidate is excluded");
  }
  std::vector<double> weights(scores.size(), 0.0);
  double total = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!allowed(i)) continue;
    weights[i] = std::exp(coef * scores[i] - max_logit);
    total += weights[i];
  }
  double u = Uniform01(rng) * total;
  int last = -1;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (weights[i] == 0.0) continue;
    last = static_cast<int>(i);
    if (u < weights[i]) return last;
    u -= weights[i];
  }
  return last;
}

absl::StatusOr<double> GaussianNoiseStddev(const Sensitivity& sens,
                                           double alpha, double eps0) {
  if (alpha >= 1.0) {
    return absl::FailedPreconditionError(
        "no Gaussian budget: alpha = 1 spends everything on selection");
  }
  if (alpha < 0.0) return absl::InvalidArgumentError("alpha must be >= 0");
  if (!(eps0 > 0.0)) {
    return absl::FailedPreconditionError("eps0 must be positive");
  }
  return sens.l2() / (std::sqrt(1.0 - alpha) * eps0);
}

absl::StatusOr<std::vector<double>> GaussianPerturb(const MarginalVector& p,
                                                    const Sensitivity& sens,
                                                    double alpha, double eps0,
                                                    Rng& rng) {
  absl::StatusOr<double> sigma = GaussianNoiseStddev(sens, alpha, eps0);
  if (!sigma.ok()) return sigma.status();
  double sum = 0.0;
  for (double v : p.probs) {
    if (v < 0.0) {
      return absl::InvalidArgumentError("marginal has a negative entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    return absl::InvalidArgumentError(
        absl::StrCat("marginal sums to ", sum, ", not 1"));
  }
  std::normal_distribution<double> noise(0.0, *sigma);
  std::vector<double> out(p.probs);
  for (double& v : out) v += noise(rng);
  return out;
}

}  // namespace dprel

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

// Zero-concentrated DP accounting and the two mechanisms used to learn the
// relationships: the exponential mechanism picks poorly approximated
// workloads and the Gaussian mechanism releases their marginals.
//
// Neighboring databases differ in one record and all of its relationships,
// with every record having at most d_max relationships and the edge count m
// fixed. Under that model a total variation score moves by at most d_max/m
// and a marginal vector moves by at most sqrt(2) * d_max / m in L2.

#ifndef DPREL_PRIVACY_H_
#define DPREL_PRIVACY_H_

#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dprel/marginals.h"
#include "dprel/rng.h"

namespace dprel {

// Smallest rho such that rho-zCDP implies (eps, delta)-DP:
// rho = (sqrt(log(1/delta) + eps) - sqrt(log(1/delta)))^2.
absl::StatusOr<double> EpsDeltaToZcdp(double eps, double delta);

// rho-zCDP implies (rho + 2 sqrt(rho log(1/delta)), delta)-DP.
double ZcdpToEps(double rho, double delta);

struct PrivacyCost {
  double eps = 0.0;
  double delta = 0.0;

  friend bool operator==(const PrivacyCost&, const PrivacyCost&) = default;
};

// Sequential composition of the two single-table generators and the
// relationship learner.
PrivacyCost ComposeTotal(PrivacyCost table1, PrivacyCost table2,
                         PrivacyCost relationships);

// Public constants of the private database that fix the sensitivities.
struct Sensitivity {
  double m = 1.0;  // edge count of the private database
  int d_max = 1;   // bound on the degree of every record

  static absl::StatusOr<Sensitivity> Create(double m, int d_max);

  double score() const { return d_max / m; }
  double l2() const { return 1.4142135623730951 * d_max / m; }
};

struct BudgetReport {
  double rho_total = 0.0;
  double eps0 = 0.0;
  double alpha = 0.0;
  int workloads_per_iteration = 0;
  int iterations = 0;
  double per_iteration_spend = 0.0;
  double rho_spent = 0.0;
  double delta = 0.0;
  double eps_equivalent_at_delta = 0.0;
};

// Tracks the zCDP spent by a run. The budget is split into K * T rounds
// of eps0^2 / 2 each, a fraction alpha of which goes to selection.
class BudgetLedger {
 public:
  // An empty ledger with no budget.
  BudgetLedger() = default;

  // Slack allowed when comparing the spend against the total.
  static constexpr double kSlack = 1e-12;

  static absl::StatusOr<BudgetLedger> Create(double eps_rel, double delta_rel,
                                             int workloads_per_iteration,
                                             int iterations, double alpha);
  static absl::StatusOr<BudgetLedger> FromRho(double rho_total, double delta,
                                              int workloads_per_iteration,
                                              int iterations, double alpha);

  double rho_total() const { return rho_total_; }
  double rho_spent() const { return rho_spent_; }
  double rho_remaining() const { return rho_total_ - rho_spent_; }
  double eps0() const { return eps0_; }
  double alpha() const { return alpha_; }
  double delta() const { return delta_; }
  int workloads_per_iteration() const { return k_; }
  int iterations() const { return t_; }

  // Cost of one exponential-mechanism selection.
  double ExponentialCost() const { return alpha_ * eps0_ * eps0_ / 2.0; }
  // Cost of one Gaussian release of a marginal vector.
  double GaussianCost() const {
    return (1.0 - alpha_) * eps0_ * eps0_ / 2.0;
  }
  double PerIterationSpend() const { return k_ * eps0_ * eps0_ / 2.0; }

  // Records a spend; fails without recording when it would exceed the total.
  absl::Status Charge(double rho);
  bool CanAfford(double rho) const {
    return rho_spent_ + rho <= rho_total_ + kSlack;
  }

  BudgetReport Report() const;

 private:
  double rho_total_ = 0.0;
  double rho_spent_ = 0.0;
  double eps0_ = 0.0;
  double alpha_ = 0.0;
  double delta_ = 0.0;
  int k_ = 0;
  int t_ = 0;
};

// Samples an index with probability proportional to
// exp(sqrt(alpha) * eps0 * scores[i] / sens.score()). Entries flagged in
// `excluded` are never returned.
absl::StatusOr<int> ExponentialSelect(std::span<const double> scores,
                                      const Sensitivity& sens, double alpha,
                                      double eps0, Rng& rng,
                                      std::span<const uint8_t> excluded = {});

// sqrt(2) d_max / (m sqrt(1 - alpha) eps0).
absl::StatusOr<double> GaussianNoiseStddev(const Sensitivity& sens,
                                           double alpha, double eps0);

// Adds i.i.d. Gaussian noise to a probability vector. The output is
// neither clipped nor renormalized.
absl::StatusOr<std::vector<double>> GaussianPerturb(const MarginalVector& p,
                                                    const Sensitivity& sens,
                                                    double alpha, double eps0,
                                                    Rng& rng);

}  // namespace dprel

#endif  // DPREL_PRIVACY_H_

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

// A deliberately small DP single-table generator so that the pipeline can
// run end to end without an external synthesizer. Quality is not a goal;
// plug in a real single-table mechanism for that.

#ifndef DPREL_BASELINE_H_
#define DPREL_BASELINE_H_

#include "absl/status/statusor.h"
#include "dprel/relational.h"
#include "dprel/rng.h"

namespace dprel {

struct BaselineConfig {
  double eps = 1.0;
  double delta = 1e-6;
  int n_out = 1;
  // 1: independent features; 2: a chain over consecutive feature pairs.
  int order = 1;
};

struct BaselineResult {
  Table table;
  double rho_charged = 0.0;
};

// Releases d noisy marginals with the Gaussian mechanism (the zCDP budget is
// split evenly across them), clips and renormalizes each, and samples
// n_out rows. With order 2 the marginals are the 1-way marginal of the
// first feature and the 2-way marginals of consecutive feature pairs.
absl::StatusOr<BaselineResult> GenerateTable(const Table& real,
                                             const BaselineConfig& cfg,
                                             Rng& rng);

}  // namespace dprel

#endif  // DPREL_BASELINE_H_

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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Every tolerance is pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "absl/strings/str_format.h"
#include "dprel/io.h"
#include "dprel/marginals.h"
#include "dprel/privacy.h"
#include "dprel/projection.h"
#include "dprel/relational.h"
#include "dprel/synthesis.h"
#include "dprel/ubs.h"
#include "test_support.h"

namespace dprel {
namespace {

using testing::BinomialBand;
using testing::DenseObjective;
using testing::DenseQueries;
using testing::LargestSingularValue;
using testing::PlantedDatabase;
using testing::ProjectByKktEnumeration;
using testing::RandomFeasibleVector;
using testing::RandomTable;
using testing::ReferenceOptimum;

// Criterion 1.
constexpr int kProjectionCases = 1000;
constexpr int kProjectionMaxN = 12;
constexpr double kProjectionInfNorm = 1e-6;
constexpr double kProjectionSumPerCoord = 1e-9;
constexpr double kProjectionSeconds = 10.0;
// Criterion 2.
constexpr int kPgdInstances = 50;
constexpr int kPgdMaxN = 36;
constexpr int kPgdMaxQueries = 10;
constexpr int kReferenceIterations = 20000;
constexpr double kPgdSlack = 1e-9;
constexpr double kPgdSeconds = 60.0;
// Criterion 3.
constexpr int kUbsVectors = 20;
constexpr int kUbsMaxN = 20;
constexpr int kUbsDraws = 200000;
constexpr double kUbsSigmas = 3.0;
constexpr double kUbsSeconds = 120.0;
// Criterion 4.
constexpr int kScalingN = 100000;
constexpr double kScalingDensity = 0.3;
constexpr int kScalingRuns = 20;
constexpr double kScalingMaxRatio = 2.5;
// Criterion 5.
constexpr int kConcentrationSide = 20;  // N = 20 x 20 = 400
constexpr int kConcentrationQueries = 50;
constexpr double kConcentrationBeta = 0.05;
constexpr int kConcentrationMSyn = 120;
constexpr int kConcentrationTrials = 10000;
// Criterion 6.
constexpr double kQuotedRho = 0.017475;
constexpr double kQuotedRhoTolerance = 1e-5;
constexpr double kRoundTripTolerance = 1e-9;
constexpr double kLedgerTolerance = 1e-12;
// Criterion 7.
constexpr int kMechanismDraws = 100000;
constexpr double kMechanismSigmas = 3.0;
constexpr double kGaussianRelTolerance = 0.02;
// Criterion 8.
constexpr int kSweepSeeds = 10;
constexpr double kSweepSeconds = 300.0;
// Criterion 9.
constexpr int kIntegrityRuns = 100;
// Criterion 11.
constexpr int kMarginalDatabases = 500;

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

QueryMatrix RandomRankOneQueries(int n1, int n2, int queries, Rng& rng) {
  QueryMatrix q(n1, n2);
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < queries; ++k) {
    std::vector<uint8_t> u(n1), v(n2);
    for (auto& x : u) x = coin(rng);
    for (auto& x : v) x = coin(rng);
    if (!q.AddQuery(u, v).ok()) std::abort();
  }
  return q;
}

Outcome ProjectionOracle() {
  Rng rng(101);
  const auto start = Clock::now();
  double worst_dist = 0.0;
  double worst_sum = 0.0;
  bool box_ok = true;
  int failures = 0;
  for (int c = 0; c < kProjectionCases; ++c) {
    const int n = std::uniform_int_distribution<int>(1, kProjectionMaxN)(rng);
    const int m = std::uniform_int_distribution<int>(0, n)(rng);
    const double scale = std::pow(10.0, std::uniform_real_distribution<double>(-1, 1)(rng));
    std::normal_distribution<double> normal(0.5, scale);
    std::vector<double> b(n);
    for (double& v : b) v = normal(rng);
    absl::StatusOr<CappedSimplexProjection> p =
        ProjectCappedSimplex(b, m, kProjectionSumPerCoord);
    if (!p.ok()) {
      ++failures;
      continue;
    }
    const std::vector<double> oracle = ProjectByKktEnumeration(b, m);
    double dist = 0.0, sum = 0.0;
    for (int i = 0; i < n; ++i) {
      dist = std::max(dist, std::abs(p->x[i] - oracle[i]));
      sum += p->x[i];
      box_ok &= p->x[i] >= 0.0 && p->x[i] <= 1.0;
    }
    worst_dist = std::max(worst_dist, dist);
    worst_sum = std::max(worst_sum, std::abs(sum - m) / n);
    if (dist > kProjectionInfNorm || std::abs(sum - m) > kProjectionSumPerCoord * n) {
      ++failures;
    }
  }
  const double secs = SecondsSince(start);
  return {failures == 0 && box_ok && secs < kProjectionSeconds,
          absl::StrFormat("%d cases, max |x-oracle|_inf=%.2e, max |sum-m|/N=%.2e, "
                          "box=%s, failures=%d, %.2fs",
                          kProjectionCases, worst_dist, worst_sum,
                          box_ok ? "exact" : "violated", failures, secs)};
}

Outcome PgdEnvelope() {
  Rng rng(202);
  const auto start = Clock::now();
  const std::vector<int> horizons = {10, 100, 1000};
  int violations = 0;
  double worst_margin = -1e300;  // max over instances of (gap - bound)
  for (int inst = 0; inst < kPgdInstances; ++inst) {
    int n1 = 0, n2 = 0;
    do {
      n1 = std::uniform_int_distribution<int>(1, 6)(rng);
      n2 = std::uniform_int_distribution<int>(1, 6)(rng);
    } while (n1 * n2 < 2 || n1 * n2 > kPgdMaxN);
    const int n = n1 * n2;
    const int queries = std::uniform_int_distribution<int>(1, kPgdMaxQueries)(rng);
    QueryMatrix q = RandomRankOneQueries(n1, n2, queries, rng);
    std::vector<double> a(queries);
    for (double& v : a) v = Uniform01(rng);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);

    const Eigen::MatrixXd dense = DenseQueries(q);
    const double sigma = LargestSingularValue(dense);
    if (sigma == 0.0) continue;
    const double eta = 0.5 * std::pow(m / sigma, 2);
    const Eigen::VectorXd ah = Eigen::Map<Eigen::VectorXd>(a.data(), a.size());
    const Eigen::VectorXd b_star = ReferenceOptimum(dense, ah, m, kReferenceIterations);
    const double f_star = DenseObjective(dense, ah, m, b_star);

    std::vector<double> b0 = RandomFeasibleVector(n, m, rng);
    const Eigen::VectorXd b0v = Eigen::Map<Eigen::VectorXd>(b0.data(), n);
    const double dist2 = (b0v - b_star).squaredNorm();
    const double f0 = DenseObjective(dense, ah, m, b0v);

    PgdConfig cfg;
    cfg.iterations = horizons.back();
    cfg.step_size_override = eta;
    cfg.record_trace = true;
    absl::StatusOr<PgdResult> r = PgdSolve(q, a, m, cfg, b0, rng);
    if (!r.ok()) {
      ++violations;
      continue;
    }
    for (int t : horizons) {
      const double gap = r->objective_trace[t] - f_star;
      const double bound = (3.0 * dist2 / eta + f0 - f_star) / t;
      worst_margin = std::max(worst_margin, gap - bound);
      if (gap > bound + kPgdSlack) ++violations;
    }
  }
  const double secs = SecondsSince(start);
  return {violations == 0 && secs < kPgdSeconds,
          absl::StrFormat("%d instances x T in {10,100,1000}, violations=%d, "
                          "max(gap-bound)=%.3e, %.2fs",
                          kPgdInstances, violations, worst_margin, secs)};
}

Outcome UbsUnbiased() {
  Rng rng(303);
  const auto start = Clock::now();
  int outside = 0;
  int tested = 0;
  int bad_cardinality = 0;
  double worst_z = 0.0;
  for (int v = 0; v < kUbsVectors; ++v) {
    const int n = std::uniform_int_distribution<int>(2, kUbsMaxN)(rng);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const std::vector<double> x = RandomFeasibleVector(n, m, rng);
    std::vector<int64_t> hits(n, 0);
    for (int d = 0; d < kUbsDraws; ++d) {
      absl::StatusOr<std::vector<int>> s = Ubs(x, m, rng);
      if (!s.ok() || static_cast<int>(s->size()) != m) {
        ++bad_cardinality;
        continue;
      }
      for (int i : *s) ++hits[i];
    }
    for (int i = 0; i < n; ++i) {
      const double freq = hits[i] / static_cast<double>(kUbsDraws);
      const double sd = BinomialBand(x[i], kUbsDraws, 1.0);
      if (sd == 0.0) {
        if (freq != x[i]) ++outside;
        continue;
      }
      ++tested;
      const double z = std::abs(freq - x[i]) / sd;
      worst_z = std::max(worst_z, z);
      if (z > kUbsSigmas) ++outside;
    }
  }
  const double secs = SecondsSince(start);
  return {outside == 0 && bad_cardinality == 0 && secs < kUbsSeconds,
          absl::StrFormat("%d vectors x %d draws, %d fractional marginals, "
                          "outside 3 sigma=%d (max z=%.2f), wrong cardinality=%d, %.2fs",
                          kUbsVectors, kUbsDraws, tested, outside, worst_z,
                          bad_cardinality, secs)};
}

double TimeUbs(const std::vector<double>& x, int64_t m, Rng& rng) {
  const auto start = Clock::now();
  absl::StatusOr<std::vector<int>> s = Ubs(x, m, rng);
  const double secs = SecondsSince(start);
  if (!s.ok() || static_cast<int64_t>(s->size()) != m) std::abort();
  return secs;
}

Outcome UbsScaling() {
  Rng rng(404);
  const int m_small = static_cast<int>(kScalingN * kScalingDensity);
  const std::vector<double> small = RandomFeasibleVector(kScalingN, m_small, rng);
  const std::vector<double> large =
      RandomFeasibleVector(2 * kScalingN, 2 * m_small, rng);
  TimeUbs(small, m_small, rng);  // warm-up
  TimeUbs(large, 2 * m_small, rng);
  std::vector<double> ratios;
  for (int r = 0; r < kScalingRuns; ++r) {
    const double t_small = TimeUbs(small, m_small, rng);
    const double t_large = TimeUbs(large, 2 * m_small, rng);
    ratios.push_back(t_large / t_small);
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = 0.5 * (ratios[kScalingRuns / 2 - 1] + ratios[kScalingRuns / 2]);
  return {median <= kScalingMaxRatio,
          absl::StrFormat("median time ratio N=%d vs N=%d over %d runs = %.3f "
                          "(limit %.1f)",
                          2 * kScalingN, kScalingN, kScalingRuns, median,
                          kScalingMaxRatio)};
}

Outcome Concentration() {
  Rng rng(505);
  const int side = kConcentrationSide;
  const int n = side * side;
  QueryMatrix q = RandomRankOneQueries(side, side, kConcentrationQueries, rng);
  const std::vector<double> x = RandomFeasibleVector(n, kConcentrationMSyn, rng);
  absl::StatusOr<WeightedBiAdjacency> b =
      WeightedBiAdjacency::Create(side, side, x, kConcentrationMSyn);
  if (!b.ok()) return {false, std::string(b.status().message())};
  const std::vector<double> expected = q.Apply(x);
  const double threshold =
      std::sqrt((n / 2.0) *
                std::log(2.0 * kConcentrationQueries / kConcentrationBeta)) /
      kConcentrationMSyn;
  int violating = 0;
  double worst = 0.0;
  for (int t = 0; t < kConcentrationTrials; ++t) {
    absl::StatusOr<BinaryMatrix> sample = SampleBiAdjacency(*b, kConcentrationMSyn, rng);
    if (!sample.ok()) return {false, std::string(sample.status().message())};
    std::vector<double> bits(n);
    for (int i = 0; i < side; ++i) {
      for (int j = 0; j < side; ++j) bits[i * side + j] = sample->at(i, j) ? 1.0 : 0.0;
    }
    const std::vector<double> got = q.Apply(bits);
    double dev = 0.0;
    for (int k = 0; k < kConcentrationQueries; ++k) {
      dev = std::max(dev, std::abs(got[k] - expected[k]) / kConcentrationMSyn);
    }
    worst = std::max(worst, dev);
    if (dev > threshold) ++violating;
  }
  const double fraction = violating / static_cast<double>(kConcentrationTrials);
  return {fraction <= kConcentrationBeta,
          absl::StrFormat("N=%d, |Q|=%d, m_syn=%d, bound=%.4f, max deviation=%.4f, "
                          "violating fraction=%.4f (limit %.2f)",
                          n, kConcentrationQueries, kConcentrationMSyn, threshold,
                          worst, fraction, kConcentrationBeta)};
}

Outcome Accounting() {
  const double delta = 1e-6;
  const double rho = *EpsDeltaToZcdp(1.0, delta);
  const double l = std::log(1.0 / delta);
  const double closed_form = std::pow(1.0 / (std::sqrt(l + 1.0) + std::sqrt(l)), 2);
  const double round_trip = std::abs(ZcdpToEps(rho, delta) - 1.0);

  const int t = 15, k = 3;
  const double alpha = 0.2;
  BudgetLedger ledger = *BudgetLedger::Create(1.0, delta, k, t, alpha);
  for (int i = 0; i < t * k; ++i) {
    if (!ledger.Charge(ledger.ExponentialCost()).ok() ||
        !ledger.Charge(ledger.GaussianCost()).ok()) {
      return {false, "ledger refused an in-budget charge"};
    }
  }
  const double eps0 = ledger.eps0();
  const double hand_total = t * k * eps0 * eps0 / 2.0;
  const bool over_refused = !ledger.Charge(1e-6).ok();

  const PrivacyCost total = ComposeTotal({0.5, 1e-7}, {0.75, 2e-7}, {1.0, 1e-6});
  const bool compose_ok = total.eps == 0.5 + 0.75 + 1.0 && total.delta == 1e-7 + 2e-7 + 1e-6;

  const bool pass = std::abs(rho - closed_form) <= 1e-15 &&
                    std::abs(rho - kQuotedRho) <= kQuotedRhoTolerance &&
                    round_trip <= kRoundTripTolerance &&
                    std::abs(ledger.rho_spent() - rho) <= kLedgerTolerance &&
                    std::abs(hand_total - rho) <= kLedgerTolerance && over_refused &&
                    compose_ok;
  return {pass,
          absl::StrFormat("rho=%.7f (quoted %.6f), round trip err=%.1e, ledger "
                          "spent-rho=%.1e, T*K*eps0^2/2-rho=%.1e, overdraft refused=%s, "
                          "composition exact=%s",
                          rho, kQuotedRho, round_trip, ledger.rho_spent() - rho,
                          hand_total - rho, over_refused ? "yes" : "no",
                          compose_ok ? "yes" : "no")};
}

Outcome Mechanisms() {
  Rng rng(707);
  const double m = 600, alpha = 0.2, eps0 = 0.05;
  const int d_max = 5;
  const Sensitivity sens = *Sensitivity::Create(m, d_max);
  const std::vector<double> scores = {0.35, 0.1};
  const double c = std::sqrt(alpha) * eps0 * m / d_max;
  const double s = scores[0] - scores[1];
  const double p = std::exp(c * s) / (1.0 + std::exp(c * s));
  int first = 0;
  for (int d = 0; d < kMechanismDraws; ++d) {
    first += *ExponentialSelect(scores, sens, alpha, eps0, rng) == 0;
  }
  const double freq = first / static_cast<double>(kMechanismDraws);
  const double band = BinomialBand(p, kMechanismDraws, kMechanismSigmas);

  const double sigma = std::sqrt(2.0) * d_max / (m * std::sqrt(1.0 - alpha) * eps0);
  MarginalVector uniform;
  uniform.workload = Workload::Cross({0}, {0});
  uniform.cardinalities = {kMechanismDraws, 1};
  uniform.probs.assign(kMechanismDraws, 1.0 / kMechanismDraws);
  std::vector<double> noise = *GaussianPerturb(uniform, sens, alpha, eps0, rng);
  for (size_t i = 0; i < noise.size(); ++i) noise[i] -= uniform.probs[i];
  double mean = 0.0;
  for (double v : noise) mean += v;
  mean /= noise.size();
  double var = 0.0;
  for (double v : noise) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / (noise.size() - 1));
  const double rel = std::abs(sd - sigma) / sigma;

  return {std::abs(freq - p) <= band && rel <= kGaussianRelTolerance,
          absl::StrFormat("softmax p=%.4f, empirical=%.4f (3 sigma band %.4f); "
                          "gaussian sd=%.6f vs %.6f (rel err %.4f, limit %.2f)",
                          p, freq, band, sd, sigma, rel, kGaussianRelTolerance)};
}

Outcome EpsilonSweep() {
  const auto start = Clock::now();
  const std::vector<double> epsilons = {0.5, 2.0, 8.0};
  std::vector<double> mean_error(epsilons.size(), 0.0);
  for (int seed = 0; seed < kSweepSeeds; ++seed) {
    const RelationalDatabase db = PlantedDatabase(200, 600, 5, 1000 + seed);
    for (size_t e = 0; e < epsilons.size(); ++e) {
      SynthesisConfig cfg;
      cfg.eps_rel = epsilons[e];
      cfg.delta_rel = 1e-6;
      cfg.T = 10;
      cfg.K = 3;
      cfg.alpha = 0.2;
      cfg.k = 3;
      cfg.m_syn = 600;
      cfg.d_max = 5;
      cfg.seed = static_cast<uint64_t>(seed);
      absl::StatusOr<SynthesisResult> r = Synthesize(db, db.table1, db.table2, cfg);
      if (!r.ok()) return {false, std::string(r.status().message())};
      mean_error[e] += r->evaluation.average_error / kSweepSeeds;
    }
  }
  const double secs = SecondsSince(start);
  bool decreasing = true;
  for (size_t e = 1; e < epsilons.size(); ++e) {
    decreasing &= mean_error[e] < mean_error[e - 1];
  }
  return {decreasing && secs < kSweepSeconds,
          absl::StrFormat("mean 3-way error over %d seeds: eps=0.5 -> %.5f, "
                          "eps=2 -> %.5f, eps=8 -> %.5f, %.1fs",
                          kSweepSeeds, mean_error[0], mean_error[1], mean_error[2],
                          secs)};
}

RelationalDatabase RandomOneToMany(int children, int parents, Rng& rng) {
  Table t1 = RandomTable(children, {2, 3}, rng, "c");
  Table t2 = RandomTable(parents, {2, 2}, rng, "p");
  std::vector<Edge> edges;
  for (int i = 0; i < children; ++i) {
    edges.emplace_back(i, std::uniform_int_distribution<int>(0, parents - 1)(rng));
  }
  return *RelationalDatabase::Create(std::move(t1), std::move(t2),
                                     *BiAdjacency::Create(children, parents, edges),
                                     RelationshipKind::kOneToMany);
}

Outcome Integrity() {
  Rng rng(909);
  int one_to_many_bad = 0, many_to_many_bad = 0;
  for (int run = 0; run < 2 * kIntegrityRuns; ++run) {
    const bool one_to_many = run < kIntegrityRuns;
    SynthesisConfig cfg;
    cfg.T = std::uniform_int_distribution<int>(1, 4)(rng);
    cfg.K = std::uniform_int_distribution<int>(1, 3)(rng);
    cfg.k = 2;
    cfg.eps_rel = std::pow(10.0, std::uniform_real_distribution<double>(-1, 1)(rng));
    cfg.seed = rng();
    cfg.pgd.iterations = 30;
    RelationalDatabase db;
    if (one_to_many) {
      const int children = std::uniform_int_distribution<int>(5, 40)(rng);
      const int parents = std::uniform_int_distribution<int>(2, 8)(rng);
      db = RandomOneToMany(children, parents, rng);
      cfg.kind = RelationshipKind::kOneToMany;
      cfg.m_syn = children;
      cfg.slice_rows = std::uniform_int_distribution<int>(0, children)(rng);
      cfg.slice_cols = cfg.slice_rows == 0 ? 0 : parents;
    } else {
      const int rows = std::uniform_int_distribution<int>(8, 25)(rng);
      const int m = std::uniform_int_distribution<int>(rows, 3 * rows)(rng);
      db = PlantedDatabase(rows, m, 6, rng());
      cfg.m_syn = std::uniform_int_distribution<int>(1, 3 * rows)(rng);
      cfg.slice_rows = std::uniform_int_distribution<int>(0, rows)(rng);
      cfg.slice_cols = cfg.slice_rows == 0 ? 0 : std::uniform_int_distribution<int>(1, rows)(rng);
    }
    cfg.n_slices = cfg.slice_rows == 0 ? 1 : std::uniform_int_distribution<int>(1, 3)(rng);
    absl::StatusOr<SynthesisResult> r = Synthesize(db, db.table1, db.table2, cfg);
    int& bad = one_to_many ? one_to_many_bad : many_to_many_bad;
    if (!r.ok()) {
      std::fprintf(stderr, "integrity run %d: %s\n", run,
                   std::string(r.status().message()).c_str());
      ++bad;
      continue;
    }
    const BiAdjacency& adj = r->synthetic.adjacency;
    const std::vector<Edge> edges(adj.edges().begin(), adj.edges().end());
    const std::set<Edge> unique(edges.begin(), edges.end());
    bool ok = ValidateIntegrity(r->synthetic).ok() && unique.size() == edges.size() &&
              adj.num_edges() == cfg.m_syn;
    if (one_to_many) {
      const std::vector<int> deg = adj.RowDegrees();
      ok &= std::all_of(deg.begin(), deg.end(), [](int d) { return d == 1; });
    }
    if (!ok) ++bad;
  }
  return {one_to_many_bad == 0 && many_to_many_bad == 0,
          absl::StrFormat("%d one-to-many runs failing=%d; %d many-to-many runs "
                          "failing=%d",
                          kIntegrityRuns, one_to_many_bad, kIntegrityRuns,
                          many_to_many_bad)};
}

absl::StatusOr<std::vector<std::string>> RunAndSave(const RelationalDatabase& db,
                                                    const RunConfig& cfg,
                                                    const std::string& dir) {
  absl::StatusOr<SynthesisResult> r =
      Synthesize(db, db.table1, db.table2, cfg.synthesis);
  if (!r.ok()) return r.status();
  BundleManifest manifest;
  manifest.dictionaries = {NumericDictionary(db.table1.schema()),
                           NumericDictionary(db.table2.schema())};
  manifest.kind = cfg.synthesis.kind;
  manifest.m_syn = cfg.synthesis.m_syn;
  manifest.seed = cfg.synthesis.seed;
  manifest.extra_json = absl::StrFormat("{\"run\": %s}", RunRecordToJson(cfg, *r));
  if (absl::Status s = SaveBundle(r->synthetic, manifest, dir); !s.ok()) return s;
  std::vector<std::string> files;
  for (const char* name : {kTable1File, kTable2File, kRelationsFile, kManifestFile}) {
    absl::StatusOr<std::string> text =
        ReadFile((std::filesystem::path(dir) / name).string());
    if (!text.ok()) return text.status();
    files.push_back(*std::move(text));
  }
  return files;
}

Outcome Determinism() {
  const RelationalDatabase db = PlantedDatabase(40, 120, 5, 77);
  RunConfig cfg;
  cfg.synthesis.m_syn = 120;
  cfg.synthesis.T = 5;
  cfg.synthesis.slice_rows = 20;
  cfg.synthesis.slice_cols = 20;
  cfg.synthesis.n_slices = 2;
  cfg.synthesis.seed = 12345;
  const std::filesystem::path base =
      std::filesystem::temp_directory_path() / "dprel_acceptance_determinism";
  std::filesystem::remove_all(base);
  absl::StatusOr<std::vector<std::string>> a = RunAndSave(db, cfg, (base / "a").string());
  absl::StatusOr<std::vector<std::string>> b = RunAndSave(db, cfg, (base / "b").string());
  if (!a.ok()) return {false, std::string(a.status().message())};
  if (!b.ok()) return {false, std::string(b.status().message())};
  size_t bytes = 0;
  for (const std::string& f : *a) bytes += f.size();
  cfg.synthesis.seed = 12346;
  absl::StatusOr<std::vector<std::string>> c = RunAndSave(db, cfg, (base / "c").string());
  const bool seed_matters = c.ok() && (*c)[2] != (*a)[2];
  std::filesystem::remove_all(base);
  return {*a == *b && seed_matters,
          absl::StrFormat("two runs, 4 files, %d bytes: %s; different seed changes "
                          "relations: %s",
                          bytes, *a == *b ? "byte-identical" : "DIFFER",
                          seed_matters ? "yes" : "no")};
}

Outcome MarginalOracle() {
  Rng rng(1111);
  int mismatches = 0, compared = 0;
  for (int d = 0; d < kMarginalDatabases; ++d) {
    auto random_cards = [&] {
      std::vector<int> cards(std::uniform_int_distribution<int>(1, 3)(rng));
      for (int& c : cards) c = std::uniform_int_distribution<int>(1, 3)(rng);
      return cards;
    };
    const int n1 = std::uniform_int_distribution<int>(1, 8)(rng);
    const int n2 = std::uniform_int_distribution<int>(1, 8)(rng);
    const Table t1 = RandomTable(n1, random_cards(), rng, "a");
    const Table t2 = RandomTable(n2, random_cards(), rng, "b");
    const int m = std::uniform_int_distribution<int>(1, n1 * n2)(rng);
    const BiAdjacency adj = testing::RandomAdjacency(n1, n2, m, rng);
    // Weights on a 1/16 grid, so every summation order is exact.
    std::vector<double> weights(n1 * n2);
    for (double& w : weights) w = std::uniform_int_distribution<int>(0, 16)(rng) / 16.0;
    double total = 0.0;
    for (double w : weights) total += w;
    if (total == 0.0) weights[0] = total = 1.0;
    const WeightedBiAdjacency wb = *WeightedBiAdjacency::FromValues(n1, n2, weights);

    const int k_max = t1.num_features() + t2.num_features();
    for (int k = 2; k <= std::min(k_max, 4); ++k) {
      for (const Workload& w :
           EnumerateCrossWorkloads(t1.schema(), t2.schema(), k)) {
        ++compared;
        absl::StatusOr<MarginalVector> got = ComputeCrossMarginal(t1, t2, adj, w);
        if (!got.ok() ||
            got->probs != testing::PairEnumerationMarginal(t1, t2, adj, w)) {
          ++mismatches;
        }
        QueryMatrix q(n1, n2);
        if (!q.AddCrossWorkload(t1, t2, w).ok()) {
          ++mismatches;
          continue;
        }
        absl::StatusOr<std::vector<double>> values = QueryValuesWeighted(q, wb);
        if (!values.ok() ||
            *values != testing::DenseQueryValues(q, weights, wb.target_sum())) {
          ++mismatches;
        }
      }
    }
  }
  return {mismatches == 0 && compared > 0,
          absl::StrFormat("%d databases, %d workloads, exact mismatches=%d",
                          kMarginalDatabases, compared, mismatches)};
}

}  // namespace
}  // namespace dprel

// Optional arguments restrict the run to the listed criterion numbers.
int main(int argc, char** argv) {
  using dprel::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"projection oracle equivalence", dprel::ProjectionOracle},
      {"gradient descent convergence envelope", dprel::PgdEnvelope},
      {"sampler unbiasedness", dprel::UbsUnbiased},
      {"sampler linear scaling", dprel::UbsScaling},
      {"concentration bound", dprel::Concentration},
      {"privacy accounting", dprel::Accounting},
      {"mechanism distributions", dprel::Mechanisms},
      {"epsilon sweep", dprel::EpsilonSweep},
      {"referential integrity", dprel::Integrity},
      {"end-to-end determinism", dprel::Determinism},
      {"marginal engine oracle", dprel::MarginalOracle},
  };
  std::vector<bool> selected(criteria.size(), argc == 1);
  for (int a = 1; a < argc; ++a) {
    const int n = std::atoi(argv[a]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %s\n", argv[a]);
      return 2;
    }
    selected[n - 1] = true;
  }
  int failed = 0;
  int run = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    ++run;
    const Outcome o = criteria[i].second();
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%d criteria passed\n", run - failed, run);
  return failed == 0 ? 0 : 1;
}

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

#include "dprel/synthesis.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "dprel/ubs.h"
#include "glog/logging.h"

namespace dprel {
namespace {

// `count` distinct elements of `pool`, uniformly, via a partial shuffle.
std::vector<int> SampleWithoutReplacement(std::vector<int> pool, int count,
                                          Rng& rng) {
  count = std::min<int>(count, static_cast<int>(pool.size()));
  for (int i = 0; i < count; ++i) {
    std::uniform_int_distribution<int> pick(i, static_cast<int>(pool.size()) - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(count);
  return pool;
}

bool Blocked(const std::vector<uint8_t>& mask, int i) {
  return !mask.empty() && mask[i];
}

// One side of a slice: `size` unblocked indices, at least a fraction of
// which currently have an edge.
std::vector<int> PickSide(const std::vector<int>& degrees, int size,
                          double min_related_fraction,
                          const std::vector<uint8_t>& blocked,
                          const char* side, Rng& rng) {
  std::vector<int> related;
  std::vector<int> unrelated;
  for (int i = 0; i < static_cast<int>(degrees.size()); ++i) {
    if (Blocked(blocked, i)) continue;
    (degrees[i] > 0 ? related : unrelated).push_back(i);
  }
  const int available = static_cast<int>(related.size() + unrelated.size());
  if (size > available) {
    VLOG(1) << "slice wants " << size << " " << side << " but only "
            << available << " are available";
    size = available;
  }
  int need = static_cast<int>(std::ceil(min_related_fraction * size - 1e-9));
  if (need > static_cast<int>(related.size())) {
    VLOG(1) << "only " << related.size() << " related " << side
            << " available for a slice that wants " << need;
    need = static_cast<int>(related.size());
  }
  std::vector<int> chosen = SampleWithoutReplacement(related, need, rng);
  std::unordered_set<int> taken(chosen.begin(), chosen.end());
  std::vector<int> rest;
  rest.reserve(available - need);
  for (int i : related) {
    if (!taken.count(i)) rest.push_back(i);
  }
  rest.insert(rest.end(), unrelated.begin(), unrelated.end());
  std::vector<int> extra = SampleWithoutReplacement(std::move(rest), size - need, rng);
  chosen.insert(chosen.end(), extra.begin(), extra.end());
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// One-to-many slice: parents first, then children whose parent is among
// them, so that every selected row keeps exactly one edge inside the slice.
SliceSelector DrawChildSlice(const BiAdjacency& adjacency,
                             const SliceShape& shape, Rng& rng,
                             const std::vector<uint8_t>& blocked_rows,
                             const std::vector<uint8_t>& blocked_cols) {
  SliceSelector sel;
  sel.cols = PickSide(adjacency.ColDegrees(), shape.cols,
                      shape.min_related_fraction, blocked_cols, "columns", rng);
  std::vector<uint8_t> in_cols(adjacency.n2(), 0);
  for (int j : sel.cols) in_cols[j] = 1;
  std::vector<int> children;
  for (const Edge& e : adjacency.edges()) {
    if (in_cols[e.second] && !Blocked(blocked_rows, e.first)) {
      children.push_back(e.first);
    }
  }
  sel.rows = SampleWithoutReplacement(std::move(children), shape.rows, rng);
  std::sort(sel.rows.begin(), sel.rows.end());
  return sel;
}

double L1Distance(std::span<const double> a, std::span<const double> b) {
  double total = 0.0;
  for (size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return total;
}

absl::Status CheckSchemasMatch(const Schema& expected, const Schema& actual,
                               const char* which) {
  if (expected.features() != actual.features()) {
    return absl::InvalidArgumentError(
        absl::StrCat("synthetic ", which, " schema differs from the real one"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status ValidateSynthesisConfig(const SynthesisConfig& cfg, int n1_syn,
                                     int n2_syn) {
  if (!(cfg.eps_rel > 0.0) || !std::isfinite(cfg.eps_rel)) {
    return absl::InvalidArgumentError("eps_rel must be positive");
  }
  if (!(cfg.delta_rel > 0.0 && cfg.delta_rel < 1.0)) {
    return absl::InvalidArgumentError("delta_rel must be in (0, 1)");
  }
  if (cfg.T < 0 || cfg.K < 0) {
    return absl::InvalidArgumentError("T and K must be non-negative");
  }
  if (!(cfg.alpha >= 0.0 && cfg.alpha < 1.0)) {
    return absl::InvalidArgumentError(
        "alpha must be in [0, 1): alpha = 1 leaves no Gaussian budget");
  }
  if (cfg.k < 2) {
    return absl::InvalidArgumentError("cross workloads need k >= 2");
  }
  if (n1_syn < 1 || n2_syn < 1) {
    return absl::InvalidArgumentError("synthetic tables must be non-empty");
  }
  const int64_t cells = static_cast<int64_t>(n1_syn) * n2_syn;
  if (cfg.kind == RelationshipKind::kOneToMany) {
    if (cfg.m_syn != n1_syn) {
      return absl::InvalidArgumentError(absl::StrCat(
          "one-to-many needs m_syn == child rows (", n1_syn, "), got ",
          cfg.m_syn));
    }
  } else if (cfg.m_syn < 1 || cfg.m_syn > cells) {
    return absl::InvalidArgumentError(absl::StrCat(
        "m_syn must be in [1, ", cells, "], got ", cfg.m_syn));
  }
  if (cfg.slice_rows < 0 || cfg.slice_rows > n1_syn || cfg.slice_cols < 0 ||
      cfg.slice_cols > n2_syn) {
    return absl::InvalidArgumentError(absl::StrCat(
        "slice ", cfg.slice_rows, "x", cfg.slice_cols,
        " does not fit the synthetic tables ", n1_syn, "x", n2_syn));
  }
  if (cfg.n_slices < 1) {
    return absl::InvalidArgumentError("n_slices must be >= 1");
  }
  if (!(cfg.min_related_fraction >= 0.0 && cfg.min_related_fraction <= 1.0)) {
    return absl::InvalidArgumentError("min_related_fraction must be in [0, 1]");
  }
  if (cfg.top_error_workloads < 1) {
    return absl::InvalidArgumentError("top_error_workloads must be >= 1");
  }
  if (cfg.workload_subsample < 0 || cfg.d_max < 0) {
    return absl::InvalidArgumentError(
        "workload_subsample and d_max must be non-negative");
  }
  return ValidatePgdConfig(cfg.pgd);
}

absl::StatusOr<BiAdjacency> InitializeAdjacency(int n1, int n2, int64_t m_syn,
                                                RelationshipKind kind,
                                                Rng& rng) {
  if (n1 < 1 || n2 < 1) {
    return absl::InvalidArgumentError("tables must be non-empty");
  }
  std::vector<Edge> edges;
  if (kind == RelationshipKind::kOneToMany) {
    if (m_syn != n1) {
      return absl::InvalidArgumentError("one-to-many needs m_syn == n1");
    }
    std::uniform_int_distribution<int> parent(0, n2 - 1);
    for (int i = 0; i < n1; ++i) edges.emplace_back(i, parent(rng));
    return BiAdjacency::Create(n1, n2, edges);
  }
  const int64_t cells = static_cast<int64_t>(n1) * n2;
  if (m_syn < 0 || m_syn > cells) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot place ", m_syn, " edges in ", cells, " cells"));
  }
  // Floyd's algorithm: m_syn distinct cells, uniformly.
  std::set<int64_t> picked;
  for (int64_t j = cells - m_syn; j < cells; ++j) {
    std::uniform_int_distribution<int64_t> draw(0, j);
    const int64_t t = draw(rng);
    if (!picked.insert(t).second) picked.insert(j);
  }
  edges.reserve(picked.size());
  for (int64_t c : picked) {
    edges.emplace_back(static_cast<int>(c / n2), static_cast<int>(c % n2));
  }
  return BiAdjacency::Create(n1, n2, edges);
}

absl::StatusOr<SliceSelector> DrawSlice(
    const BiAdjacency& adjacency, const SliceShape& shape, Rng& rng,
    const std::vector<uint8_t>& blocked_rows,
    const std::vector<uint8_t>& blocked_cols) {
  if (shape.rows < 0 || shape.rows > adjacency.n1() || shape.cols < 0 ||
      shape.cols > adjacency.n2()) {
    return absl::InvalidArgumentError("slice shape exceeds the matrix");
  }
  if ((!blocked_rows.empty() &&
       static_cast<int>(blocked_rows.size()) != adjacency.n1()) ||
      (!blocked_cols.empty() &&
       static_cast<int>(blocked_cols.size()) != adjacency.n2())) {
    return absl::InvalidArgumentError("blocked mask has the wrong length");
  }
  SliceSelector sel;
  sel.rows = PickSide(adjacency.RowDegrees(), shape.rows,
                      shape.min_related_fraction, blocked_rows, "rows", rng);
  sel.cols = PickSide(adjacency.ColDegrees(), shape.cols,
                      shape.min_related_fraction, blocked_cols, "columns", rng);
  return sel;
}

absl::StatusOr<EvaluationReport> Evaluate(const RelationalDatabase& real,
                                          const RelationalDatabase& syn,
                                          int k) {
  if (absl::Status s = CheckSchemasMatch(real.table1.schema(),
                                         syn.table1.schema(), "table1");
      !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckSchemasMatch(real.table2.schema(),
                                         syn.table2.schema(), "table2");
      !s.ok()) {
    return s;
  }
  EvaluationReport report;
  report.k = k;
  const std::vector<Workload> workloads = EnumerateCrossWorkloads(
      real.table1.schema(), real.table2.schema(), k);
  for (const Workload& w : workloads) {
    absl::StatusOr<MarginalVector> r = ComputeCrossMarginal(real, w);
    if (!r.ok()) return r.status();
    std::vector<double> s(r->probs.size(), 0.0);
    if (syn.adjacency.num_edges() > 0) {
      absl::StatusOr<MarginalVector> sm = ComputeCrossMarginal(syn, w);
      if (!sm.ok()) return sm.status();
      s = std::move(sm->probs);
    }
    WorkloadError e{w, 0.0, 0.0};
    for (size_t c = 0; c < s.size(); ++c) {
      const double diff = s[c] - r->probs[c];
      e.l1_error += std::abs(diff);
      e.squared_error += diff * diff;
    }
    report.average_error += e.l1_error;
    report.mse += e.squared_error;
    report.per_workload.push_back(std::move(e));
  }
  if (!workloads.empty()) {
    report.average_error /= workloads.size();
    report.mse /= workloads.size();
  }
  return report;
}

absl::StatusOr<RelationshipSynthesizer> RelationshipSynthesizer::Create(
    const RelationalDatabase& real, Table syn_table1, Table syn_table2,
    const SynthesisConfig& cfg) {
  if (real.kind != cfg.kind) {
    return absl::InvalidArgumentError(absl::StrCat(
        "config kind ", RelationshipKindName(cfg.kind),
        " does not match the database kind ", RelationshipKindName(real.kind)));
  }
  if (absl::Status s = CheckSchemasMatch(real.table1.schema(),
                                         syn_table1.schema(), "table1");
      !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckSchemasMatch(real.table2.schema(),
                                         syn_table2.schema(), "table2");
      !s.ok()) {
    return s;
  }
  if (absl::Status s = ValidateSynthesisConfig(cfg, syn_table1.num_rows(),
                                               syn_table2.num_rows());
      !s.ok()) {
    return s;
  }
  IntegrityReport integrity = ValidateIntegrity(real);
  if (!integrity.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("private database: ", integrity.violations.front()));
  }
  const int64_t m = real.adjacency.num_edges();
  if (m == 0) {
    return absl::FailedPreconditionError("private database has no relationships");
  }
  const int observed = MaxDegree(real);
  if (cfg.d_max > 0 && observed > cfg.d_max) {
    return absl::InvalidArgumentError(absl::StrCat(
        "private data has degree ", observed, " above the declared d_max ",
        cfg.d_max, "; truncate it first"));
  }
  absl::StatusOr<Sensitivity> sens =
      Sensitivity::Create(static_cast<double>(m), cfg.d_max > 0 ? cfg.d_max : observed);
  if (!sens.ok()) return sens.status();

  RelationshipSynthesizer out;
  out.real_ = real;
  out.syn1_ = std::move(syn_table1);
  out.syn2_ = std::move(syn_table2);
  out.cfg_ = cfg;
  if (out.cfg_.slice_rows == 0) out.cfg_.slice_rows = out.syn1_.num_rows();
  if (out.cfg_.slice_cols == 0) out.cfg_.slice_cols = out.syn2_.num_rows();
  out.sensitivity_ = *sens;
  out.workloads_ = EnumerateCrossWorkloads(real.table1.schema(),
                                           real.table2.schema(), cfg.k);
  if (out.workloads_.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "no cross workloads of order ", cfg.k, " exist for these schemas"));
  }
  out.real_marginals_.reserve(out.workloads_.size());
  for (const Workload& w : out.workloads_) {
    absl::StatusOr<MarginalVector> p = ComputeCrossMarginal(real, w);
    if (!p.ok()) return p.status();
    out.real_marginals_.push_back(*std::move(p));
  }
  out.streams_ = RngStreams(cfg.seed);
  return out;
}

absl::StatusOr<RunState> RelationshipSynthesizer::Initialize() const {
  RunState state;
  absl::StatusOr<BudgetLedger> ledger = BudgetLedger::Create(
      cfg_.eps_rel, cfg_.delta_rel, cfg_.K, cfg_.T, cfg_.alpha);
  if (!ledger.ok()) return ledger.status();
  state.ledger = *std::move(ledger);
  Rng rng = streams_.Fork("init");
  absl::StatusOr<BiAdjacency> adj = InitializeAdjacency(
      syn1_.num_rows(), syn2_.num_rows(), cfg_.m_syn, cfg_.kind, rng);
  if (!adj.ok()) return adj.status();
  state.adjacency = *std::move(adj);
  return state;
}

absl::StatusOr<MarginalVector> RelationshipSynthesizer::SyntheticMarginal(
    const BiAdjacency& adj, const Workload& w) const {
  return ComputeCrossMarginal(syn1_, syn2_, adj, w);
}

absl::Status RelationshipSynthesizer::RunIteration(RunState* state) const {
  const int t = state->iteration;
  BudgetLedger& ledger = state->ledger;
  IterationLog log;
  log.iteration = t;

  // Selection among the workloads that have not been measured yet.
  std::vector<uint8_t> measured_mask(workloads_.size(), 0);
  for (const MeasuredWorkload& mw : state->measured) {
    auto it = std::find(workloads_.begin(), workloads_.end(), mw.workload);
    if (it != workloads_.end()) {
      measured_mask[it - workloads_.begin()] = 1;
    }
  }
  std::vector<int> candidates;
  for (int i = 0; i < static_cast<int>(workloads_.size()); ++i) {
    if (!measured_mask[i]) candidates.push_back(i);
  }
  Rng select_rng = streams_.Fork("selection", t);
  if (cfg_.workload_subsample > 0 &&
      static_cast<int>(candidates.size()) > cfg_.workload_subsample) {
    candidates = SampleWithoutReplacement(std::move(candidates),
                                          cfg_.workload_subsample, select_rng);
    std::sort(candidates.begin(), candidates.end());
  }
  const int to_select = std::min<int>(cfg_.K, candidates.size());
  if (to_select < cfg_.K) {
    VLOG(1) << "iteration " << t << ": only " << candidates.size()
            << " unmeasured workloads remain";
  }
  const double round_cost = ledger.ExponentialCost() + ledger.GaussianCost();
  if (!ledger.CanAfford(to_select * round_cost)) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "iteration ", t, " needs ", to_select * round_cost, " rho but only ",
        ledger.rho_remaining(), " remains"));
  }
  std::vector<int> selected;
  if (to_select > 0) {
    std::vector<double> scores(candidates.size());
    for (size_t c = 0; c < candidates.size(); ++c) {
      const int w = candidates[c];
      absl::StatusOr<MarginalVector> syn =
          SyntheticMarginal(state->adjacency, workloads_[w]);
      if (!syn.ok()) return syn.status();
      absl::StatusOr<double> tv = TvScore(real_marginals_[w], *syn);
      if (!tv.ok()) return tv.status();
      scores[c] = *tv;
    }
    std::vector<uint8_t> excluded(candidates.size(), 0);
    for (int s = 0; s < to_select; ++s) {
      absl::StatusOr<int> pick =
          ExponentialSelect(scores, sensitivity_, ledger.alpha(), ledger.eps0(),
                            select_rng, excluded);
      if (!pick.ok()) return pick.status();
      if (absl::Status st = ledger.Charge(ledger.ExponentialCost()); !st.ok()) {
        return st;
      }
      excluded[*pick] = 1;
      selected.push_back(candidates[*pick]);
    }
  }

  // Measurement.
  Rng noise_rng = streams_.Fork("noise", t);
  for (int w : selected) {
    absl::StatusOr<std::vector<double>> noisy =
        GaussianPerturb(real_marginals_[w], sensitivity_, ledger.alpha(),
                        ledger.eps0(), noise_rng);
    if (!noisy.ok()) return noisy.status();
    if (absl::Status st = ledger.Charge(ledger.GaussianCost()); !st.ok()) {
      return st;
    }
    log.selected.push_back(workloads_[w]);
    log.noisy_answers.push_back(*noisy);
    state->measured.push_back({workloads_[w], t, *std::move(noisy)});
  }

  // The measured workloads answered worst by the current synthetic data.
  std::vector<std::pair<double, int>> ranked;
  for (int i = 0; i < static_cast<int>(state->measured.size()); ++i) {
    const MeasuredWorkload& mw = state->measured[i];
    absl::StatusOr<MarginalVector> syn =
        SyntheticMarginal(state->adjacency, mw.workload);
    if (!syn.ok()) return syn.status();
    ranked.emplace_back(L1Distance(syn->probs, mw.noisy_answers), i);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  if (static_cast<int>(ranked.size()) > cfg_.top_error_workloads) {
    ranked.resize(cfg_.top_error_workloads);
  }
  std::vector<const MeasuredWorkload*> top;
  for (const auto& [err, i] : ranked) {
    top.push_back(&state->measured[i]);
    log.optimized.push_back(state->measured[i].workload);
  }

  if (!top.empty()) {
    Rng slice_rng = streams_.Fork("slicing", t);
    std::vector<uint8_t> blocked_rows(syn1_.num_rows(), 0);
    std::vector<uint8_t> blocked_cols(syn2_.num_rows(), 0);
    const SliceShape shape{cfg_.slice_rows, cfg_.slice_cols,
                           cfg_.min_related_fraction};
    for (int s = 0; s < cfg_.n_slices; ++s) {
      SliceSelector sel;
      if (cfg_.kind == RelationshipKind::kOneToMany) {
        sel = DrawChildSlice(state->adjacency, shape, slice_rng, blocked_rows,
                             blocked_cols);
      } else {
        absl::StatusOr<SliceSelector> drawn = DrawSlice(
            state->adjacency, shape, slice_rng, blocked_rows, blocked_cols);
        if (!drawn.ok()) return drawn.status();
        sel = *std::move(drawn);
      }
      if (sel.rows.empty() || sel.cols.empty()) break;
      for (int i : sel.rows) blocked_rows[i] = 1;
      for (int j : sel.cols) blocked_cols[j] = 1;
      Rng rng = streams_.Fork(absl::StrCat("pgd/", s), t);
      SliceLog slice_log;
      if (absl::Status st = OptimizeSlice(top, sel, rng, state, &slice_log);
          !st.ok()) {
        return st;
      }
      log.slices.push_back(slice_log);
    }
  }

  if (cfg_.kind == RelationshipKind::kManyToMany &&
      state->adjacency.num_edges() != cfg_.m_syn) {
    return absl::InternalError(absl::StrCat(
        "edge count drifted to ", state->adjacency.num_edges(), " from ",
        cfg_.m_syn));
  }
  log.rho_spent = ledger.rho_spent();
  state->log.push_back(std::move(log));
  ++state->iteration;
  return absl::OkStatus();
}

absl::Status RelationshipSynthesizer::OptimizeSlice(
    const std::vector<const MeasuredWorkload*>& top, const SliceSelector& sel,
    Rng& rng, RunState* state, SliceLog* log) const {
  log->rows = sel.num_rows();
  log->cols = sel.num_cols();
  absl::StatusOr<BinaryMatrix> current = Slice(state->adjacency, sel);
  if (!current.ok()) return current.status();
  const int64_t m_slice = current->count();
  log->edges = m_slice;
  if (m_slice == 0) {
    log->skipped = true;
    return absl::OkStatus();
  }

  QueryMatrix full(syn1_.num_rows(), syn2_.num_rows());
  std::vector<double> a_hat;
  for (const MeasuredWorkload* mw : top) {
    if (absl::Status st = full.AddCrossWorkload(syn1_, syn2_, mw->workload);
        !st.ok()) {
      return st;
    }
    a_hat.insert(a_hat.end(), mw->noisy_answers.begin(), mw->noisy_answers.end());
  }
  absl::StatusOr<QueryMatrix> q = full.Slice(sel);
  if (!q.ok()) return q.status();

  std::vector<double> init(current->values.begin(), current->values.end());
  const double m = static_cast<double>(m_slice);
  log->objective_before = PgdObjective(*q, a_hat, m, init);

  const bool one_to_many = cfg_.kind == RelationshipKind::kOneToMany;
  absl::StatusOr<PgdResult> solved =
      one_to_many ? PgdSolveOneToMany(*q, a_hat, cfg_.pgd, init, rng)
                  : PgdSolve(*q, a_hat, m, cfg_.pgd, init, rng);
  if (!solved.ok()) return solved.status();
  log->objective_relaxed = solved->objective;

  absl::StatusOr<BinaryMatrix> sample =
      one_to_many ? CategoricalRound(solved->weights, rng)
                  : SampleBiAdjacency(solved->weights, m_slice, rng);
  if (!sample.ok()) return sample.status();

  std::vector<double> rounded(sample->values.begin(), sample->values.end());
  log->objective_after = PgdObjective(*q, a_hat, m, rounded);
  return Reinsert(sel, *sample, &state->adjacency);
}

absl::StatusOr<SynthesisResult> Synthesize(const RelationalDatabase& real,
                                           const Table& syn_table1,
                                           const Table& syn_table2,
                                           const SynthesisConfig& cfg) {
  absl::StatusOr<RelationshipSynthesizer> synth =
      RelationshipSynthesizer::Create(real, syn_table1, syn_table2, cfg);
  if (!synth.ok()) return synth.status();
  absl::StatusOr<RunState> state = synth->Initialize();
  if (!state.ok()) return state.status();
  for (int t = 0; t < cfg.T; ++t) {
    if (absl::Status st = synth->RunIteration(&*state); !st.ok()) return st;
    VLOG(1) << "iteration " << t << " done, rho spent "
            << state->ledger.rho_spent();
  }

  SynthesisResult result;
  absl::StatusOr<RelationalDatabase> db = RelationalDatabase::Create(
      syn_table1, syn_table2, std::move(state->adjacency), cfg.kind);
  if (!db.ok()) return db.status();
  result.synthetic = *std::move(db);
  result.budget = state->ledger.Report();
  result.iterations = std::move(state->log);
  result.m_real = real.adjacency.num_edges();
  result.d_max = synth->sensitivity().d_max;
  absl::StatusOr<EvaluationReport> eval = Evaluate(real, result.synthetic, cfg.k);
  if (!eval.ok()) return eval.status();
  result.evaluation = *std::move(eval);
  return result;
}

}  // namespace dprel

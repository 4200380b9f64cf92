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

#include "cli.h"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "dprel/baseline.h"
#include "dprel/io.h"
#include "dprel/privacy.h"
#include "dprel/projection.h"
#include "dprel/rng.h"
#include "dprel/synthesis.h"
#include "dprel/ubs.h"
#include "json.hpp"

namespace dprel {
namespace {

using Json = nlohmann::ordered_json;

struct InputFlags {
  std::string data_dir;
  std::string table1;
  std::string table2;
  std::string relations;
  std::string delimiter = "comma";
  std::string id1_column;
  std::string id2_column;
  int d_max_cap = 0;
};

struct SynthesizeFlags {
  InputFlags input;
  std::string config;
  std::string out_dir;
  std::string syn_table1;
  std::string syn_table2;
  std::string diagnostics;
  std::optional<uint64_t> seed;
  std::optional<int64_t> m_syn;
};

struct EvaluateFlags {
  std::string real_dir;
  std::string synthetic_dir;
  std::string delimiter = "comma";
  int k = 3;
  std::string json;
};

struct BudgetFlags {
  std::string config;
  std::optional<double> eps;
  std::optional<double> delta;
  std::optional<int> workloads;
  std::optional<int> iterations;
  std::optional<double> alpha;
  std::string json;
};

struct VectorFlags {
  std::string input;
  std::string output;
  double m = 0.0;
  double tolerance = 1e-9;
  uint64_t seed = 0;
  int draws = 1;
};

// Maps a failed status to an exit code after printing it.
int Fail(std::ostream& err, const absl::Status& status, int code) {
  err << "error: " << status.message() << "\n";
  return status.code() == absl::StatusCode::kResourceExhausted ? kExitBudget
                                                               : code;
}

char DelimiterChar(const std::string& name) {
  if (name == "tab") return '\t';
  if (name == "semicolon") return ';';
  return ',';
}

absl::StatusOr<std::vector<double>> ReadVector(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  std::vector<double> out;
  for (absl::string_view token :
       absl::StrSplit(*text, absl::ByAnyChar(" ,\t\r\n"), absl::SkipEmpty())) {
    double v = 0.0;
    if (!absl::SimpleAtod(token, &v)) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ": '", token, "' is not a number"));
    }
    out.push_back(v);
  }
  return out;
}

absl::Status Emit(const std::string& path, const std::string& text,
                  std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return absl::OkStatus();
  }
  return WriteFile(path, text);
}

absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path) {
  if (path.empty()) return RunConfig{};
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<RunConfig> cfg = ParseRunConfig(*text);
  if (!cfg.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", cfg.status().message()));
  }
  return cfg;
}

bool HasManifest(const std::string& dir) {
  return std::filesystem::exists(std::filesystem::path(dir) / kManifestFile);
}

void AddInputFlags(CLI::App* cmd, InputFlags* f) {
  cmd->add_option("--data", f->data_dir,
                  "Directory holding table1.csv, table2.csv, relations.csv");
  cmd->add_option("--table1", f->table1, "First table");
  cmd->add_option("--table2", f->table2, "Second table");
  cmd->add_option("--relations", f->relations, "Linking table (id1, id2)");
  cmd->add_option("--delimiter", f->delimiter, "Field delimiter")
      ->check(CLI::IsMember({"comma", "tab", "semicolon"}));
  cmd->add_option("--id1-column", f->id1_column,
                  "ID column of table1 referenced by the relations");
  cmd->add_option("--id2-column", f->id2_column,
                  "ID column of table2 referenced by the relations");
  cmd->add_option("--d-max-cap", f->d_max_cap,
                  "Keep at most this many relations per record (0: no cap)")
      ->check(CLI::NonNegativeNumber);
}

int RunSynthesize(const SynthesizeFlags& f, std::ostream& out,
                  std::ostream& err) {
  absl::StatusOr<RunConfig> loaded = LoadRunConfig(f.config);
  if (!loaded.ok()) return Fail(err, loaded.status(), kExitUsage);
  RunConfig cfg = *std::move(loaded);
  SynthesisConfig& s = cfg.synthesis;
  if (f.seed) s.seed = *f.seed;
  if (f.m_syn) s.m_syn = *f.m_syn;

  if (absl::StatusOr<BudgetLedger> plan =
          BudgetLedger::Create(s.eps_rel, s.delta_rel, s.K, s.T, s.alpha);
      !plan.ok()) {
    return Fail(err, plan.status(), kExitBudget);
  }

  BundlePaths paths;
  if (!f.input.data_dir.empty()) {
    paths = BundlePaths::InDirectory(f.input.data_dir);
  }
  if (!f.input.table1.empty()) paths.table1 = f.input.table1;
  if (!f.input.table2.empty()) paths.table2 = f.input.table2;
  if (!f.input.relations.empty()) paths.relations = f.input.relations;
  if (paths.table1.empty() || paths.table2.empty() || paths.relations.empty()) {
    err << "error: pass --data or all of --table1, --table2, --relations\n";
    return kExitUsage;
  }
  if (f.syn_table1.empty() != f.syn_table2.empty()) {
    err << "error: pass both --syn-table1 and --syn-table2 or neither\n";
    return kExitUsage;
  }
  LoadOptions lo;
  lo.csv.delimiter = DelimiterChar(f.input.delimiter);
  lo.kind = s.kind;
  lo.id1_column = f.input.id1_column;
  lo.id2_column = f.input.id2_column;
  lo.d_max_cap = f.input.d_max_cap;
  absl::StatusOr<LoadedBundle> real = LoadBundle(paths, lo);
  if (!real.ok()) return Fail(err, real.status(), kExitData);

  // Synthetic tables: supplied, or drawn from the single-table generator.
  Table syn1, syn2;
  std::optional<PrivacyCost> table_cost;
  if (!f.syn_table1.empty()) {
    absl::StatusOr<LoadedTable> t1 =
        LoadTable(f.syn_table1, lo.csv, &real->dictionaries.table1);
    if (!t1.ok()) return Fail(err, t1.status(), kExitData);
    absl::StatusOr<LoadedTable> t2 =
        LoadTable(f.syn_table2, lo.csv, &real->dictionaries.table2);
    if (!t2.ok()) return Fail(err, t2.status(), kExitData);
    syn1 = std::move(t1->table);
    syn2 = std::move(t2->table);
  } else {
    const RngStreams streams(s.seed);
    BaselineConfig b = cfg.baseline;
    b.n_out = cfg.n1_syn > 0 ? cfg.n1_syn : real->db.table1.num_rows();
    Rng rng1 = streams.Fork("cli.baseline", 1);
    absl::StatusOr<BaselineResult> t1 = GenerateTable(real->db.table1, b, rng1);
    if (!t1.ok()) return Fail(err, t1.status(), kExitBudget);
    b.n_out = cfg.n2_syn > 0 ? cfg.n2_syn : real->db.table2.num_rows();
    Rng rng2 = streams.Fork("cli.baseline", 2);
    absl::StatusOr<BaselineResult> t2 = GenerateTable(real->db.table2, b, rng2);
    if (!t2.ok()) return Fail(err, t2.status(), kExitBudget);
    syn1 = std::move(t1->table);
    syn2 = std::move(t2->table);
    table_cost = PrivacyCost{cfg.baseline.eps, cfg.baseline.delta};
  }
  if (s.kind == RelationshipKind::kOneToMany && s.m_syn == 0) {
    s.m_syn = syn1.num_rows();
  }
  if (s.m_syn <= 0) {
    err << "error: m_syn must be set in the config or with --m-syn\n";
    return kExitUsage;
  }
  if (absl::Status v = ValidateSynthesisConfig(s, syn1.num_rows(), syn2.num_rows());
      !v.ok()) {
    return Fail(err, v, kExitUsage);
  }

  absl::StatusOr<SynthesisResult> result = Synthesize(real->db, syn1, syn2, s);
  if (!result.ok()) return Fail(err, result.status(), kExitData);

  Json extra;
  extra["run"] = Json::parse(RunRecordToJson(cfg, *result));
  extra["d_max_cap"] = f.input.d_max_cap;
  const PrivacyCost rel_cost{s.eps_rel, s.delta_rel};
  if (table_cost) {
    const PrivacyCost total = ComposeTotal(*table_cost, *table_cost, rel_cost);
    extra["tables"] = {{"generator", "baseline"},
                       {"order", cfg.baseline.order},
                       {"eps", table_cost->eps},
                       {"delta", table_cost->delta}};
    extra["total_cost"] = {{"eps", total.eps}, {"delta", total.delta}};
  } else {
    extra["tables"] = {{"generator", "supplied"}};
  }
  BundleManifest manifest;
  manifest.dictionaries = real->dictionaries;
  manifest.kind = s.kind;
  manifest.m_syn = s.m_syn;
  manifest.seed = s.seed;
  manifest.extra_json = extra.dump();
  if (absl::Status saved = SaveBundle(result->synthetic, manifest, f.out_dir, lo.csv);
      !saved.ok()) {
    return Fail(err, saved, kExitData);
  }
  if (!f.diagnostics.empty()) {
    // Errors against the private data; not part of the released bundle.
    const std::string text =
        absl::StrCat("{\"budget\": ", BudgetReportToJson(result->budget),
                     ", \"evaluation\": ",
                     EvaluationReportToJson(result->evaluation), "}\n");
    if (absl::Status w = WriteFile(f.diagnostics, text); !w.ok()) {
      return Fail(err, w, kExitData);
    }
  }
  out << BudgetReportToText(result->budget);
  out << absl::StrFormat("m real                  %d\nm_syn                   %d\n"
                         "d_max                   %d\nwrote                   %s\n",
                         result->m_real, s.m_syn, result->d_max, f.out_dir);
  return kExitOk;
}

int RunEvaluate(const EvaluateFlags& f, std::ostream& out, std::ostream& err) {
  CsvOptions csv;
  csv.delimiter = DelimiterChar(f.delimiter);
  absl::StatusOr<LoadedBundle> real =
      HasManifest(f.real_dir) ? LoadBundleDirectory(f.real_dir, csv)
                              : LoadBundle(BundlePaths::InDirectory(f.real_dir),
                                           LoadOptions{.csv = csv});
  if (!real.ok()) return Fail(err, real.status(), kExitData);
  LoadOptions lo;
  lo.csv = csv;
  lo.kind = real->db.kind;
  if (HasManifest(f.synthetic_dir)) {
    absl::StatusOr<BundleManifest> m = ReadManifest(
        (std::filesystem::path(f.synthetic_dir) / kManifestFile).string());
    if (!m.ok()) return Fail(err, m.status(), kExitData);
    lo.kind = m->kind;
  }
  // The synthetic bundle is read with the real encoding.
  lo.dictionaries = &real->dictionaries;
  absl::StatusOr<LoadedBundle> syn =
      LoadBundle(BundlePaths::InDirectory(f.synthetic_dir), lo);
  if (!syn.ok()) return Fail(err, syn.status(), kExitData);
  absl::StatusOr<EvaluationReport> report = Evaluate(real->db, syn->db, f.k);
  if (!report.ok()) return Fail(err, report.status(), kExitData);
  if (!f.json.empty()) {
    if (absl::Status w = Emit(f.json, EvaluationReportToJson(*report) + "\n", out);
        !w.ok()) {
      return Fail(err, w, kExitData);
    }
  }
  if (f.json != "-") out << EvaluationReportToText(*report);
  return kExitOk;
}

int RunBudget(const BudgetFlags& f, std::ostream& out, std::ostream& err) {
  absl::StatusOr<RunConfig> loaded = LoadRunConfig(f.config);
  if (!loaded.ok()) return Fail(err, loaded.status(), kExitUsage);
  SynthesisConfig s = loaded->synthesis;
  if (f.eps) s.eps_rel = *f.eps;
  if (f.delta) s.delta_rel = *f.delta;
  if (f.workloads) s.K = *f.workloads;
  if (f.iterations) s.T = *f.iterations;
  if (f.alpha) s.alpha = *f.alpha;
  absl::StatusOr<BudgetLedger> ledger =
      BudgetLedger::Create(s.eps_rel, s.delta_rel, s.K, s.T, s.alpha);
  if (!ledger.ok()) return Fail(err, ledger.status(), kExitBudget);
  const BudgetReport report = ledger->Report();
  if (!f.json.empty()) {
    if (absl::Status w = Emit(f.json, BudgetReportToJson(report) + "\n", out);
        !w.ok()) {
      return Fail(err, w, kExitData);
    }
  }
  if (f.json != "-") out << BudgetReportToText(report);
  return kExitOk;
}

int RunProject(const VectorFlags& f, std::ostream& out, std::ostream& err) {
  absl::StatusOr<std::vector<double>> b = ReadVector(f.input);
  if (!b.ok()) return Fail(err, b.status(), kExitData);
  absl::StatusOr<CappedSimplexProjection> p =
      ProjectCappedSimplex(*b, f.m, f.tolerance);
  if (!p.ok()) return Fail(err, p.status(), kExitData);
  std::string text;
  for (double v : p->x) absl::StrAppendFormat(&text, "%.17g\n", v);
  if (absl::Status w = Emit(f.output, text, out); !w.ok()) {
    return Fail(err, w, kExitData);
  }
  return kExitOk;
}

int RunSample(const VectorFlags& f, std::ostream& out, std::ostream& err) {
  absl::StatusOr<std::vector<double>> x = ReadVector(f.input);
  if (!x.ok()) return Fail(err, x.status(), kExitData);
  const int64_t m = static_cast<int64_t>(std::llround(f.m));
  if (static_cast<double>(m) != f.m) {
    err << "error: --m must be an integer\n";
    return kExitUsage;
  }
  Rng rng = RngStreams(f.seed).Fork("cli.sample");
  std::string text;
  for (int d = 0; d < f.draws; ++d) {
    absl::StatusOr<std::vector<int>> picked = Ubs(*x, m, rng);
    if (!picked.ok()) return Fail(err, picked.status(), kExitData);
    absl::StrAppend(&text, absl::StrJoin(*picked, ","), "\n");
  }
  if (absl::Status w = Emit(f.output, text, out); !w.ok()) {
    return Fail(err, w, kExitData);
  }
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Differentially private synthetic relational databases", "dprel"};
  app.require_subcommand(1);

  SynthesizeFlags syn;
  CLI::App* synthesize = app.add_subcommand(
      "synthesize", "Learn synthetic relationships and write a bundle");
  AddInputFlags(synthesize, &syn.input);
  synthesize->add_option("--config", syn.config, "JSON run configuration")
      ->check(CLI::ExistingFile);
  synthesize->add_option("--out", syn.out_dir, "Output bundle directory")
      ->required();
  synthesize->add_option("--syn-table1", syn.syn_table1,
                         "Synthetic first table (skips the table generator)");
  synthesize->add_option("--syn-table2", syn.syn_table2,
                         "Synthetic second table");
  synthesize->add_option("--seed", syn.seed, "Overrides the config seed");
  synthesize->add_option("--m-syn", syn.m_syn,
                         "Synthetic relationship count; overrides the config");
  synthesize->add_option("--diagnostics", syn.diagnostics,
                         "Write budget and errors against the private data "
                         "(JSON, not for release)");

  EvaluateFlags eval;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "k-way cross-table error between two bundles");
  evaluate->add_option("--real", eval.real_dir, "Reference bundle directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  evaluate->add_option("--synthetic", eval.synthetic_dir,
                       "Bundle directory to score")
      ->required()
      ->check(CLI::ExistingDirectory);
  evaluate->add_option("--k", eval.k, "Workload order")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--delimiter", eval.delimiter, "Field delimiter")
      ->check(CLI::IsMember({"comma", "tab", "semicolon"}));
  evaluate->add_option("--json", eval.json, "Write the JSON report here ('-': stdout)");

  BudgetFlags budget;
  CLI::App* budget_cmd =
      app.add_subcommand("budget", "Print the privacy budget plan of a config");
  budget_cmd->add_option("--config", budget.config, "JSON run configuration")
      ->check(CLI::ExistingFile);
  budget_cmd->add_option("--eps", budget.eps, "eps_rel");
  budget_cmd->add_option("--delta", budget.delta, "delta_rel");
  budget_cmd->add_option("--K", budget.workloads, "Workloads per iteration");
  budget_cmd->add_option("--T", budget.iterations, "Iterations");
  budget_cmd->add_option("--alpha", budget.alpha, "Selection share of each round");
  budget_cmd->add_option("--json", budget.json, "Write the JSON report here ('-': stdout)");

  VectorFlags proj;
  CLI::App* project = app.add_subcommand(
      "project", "Project a vector onto {0 <= x <= 1, sum x = m}");
  project->add_option("--input", proj.input, "Whitespace or comma separated numbers")
      ->required()
      ->check(CLI::ExistingFile);
  project->add_option("--m", proj.m, "Target sum")->required();
  project->add_option("--tolerance", proj.tolerance, "Sum tolerance per coordinate");
  project->add_option("--output", proj.output, "Output file (default stdout)");

  VectorFlags sample;
  CLI::App* sample_cmd = app.add_subcommand(
      "sample", "Draw exactly m indices with marginals equal to the input");
  sample_cmd->add_option("--input", sample.input, "Numbers in [0, 1] summing to m")
      ->required()
      ->check(CLI::ExistingFile);
  sample_cmd->add_option("--m", sample.m, "Number of indices")->required();
  sample_cmd->add_option("--seed", sample.seed, "Random seed");
  sample_cmd->add_option("--draws", sample.draws, "Number of draws")
      ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--output", sample.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help requests exit cleanly; anything else is a usage error.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  if (*synthesize) return RunSynthesize(syn, out, err);
  if (*evaluate) return RunEvaluate(eval, out, err);
  if (*budget_cmd) return RunBudget(budget, out, err);
  if (*project) return RunProject(proj, out, err);
  return RunSample(sample, out, err);
}

}  // namespace dprel

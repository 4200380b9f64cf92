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

// File formats. A bundle is a directory with
//   table1.csv, table2.csv  categorical tables with a header row,
//   relations.csv           an (id1, id2) linking table with a header row,
//   manifest.json           label dictionaries and run metadata.
// Every column is categorical. Labels are mapped to codes through a
// dictionary: inferred as the sorted distinct labels of a column, or taken
// from a manifest so that two bundles share one encoding.

#ifndef DPREL_IO_H_
#define DPREL_IO_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dprel/baseline.h"
#include "dprel/privacy.h"
#include "dprel/relational.h"
#include "dprel/synthesis.h"

namespace dprel {

inline constexpr char kTable1File[] = "table1.csv";
inline constexpr char kTable2File[] = "table2.csv";
inline constexpr char kRelationsFile[] = "relations.csv";
inline constexpr char kManifestFile[] = "manifest.json";

// Labels of one feature; the code of a label is its position.
struct FeatureDictionary {
  std::string name;
  std::vector<std::string> labels;

  friend bool operator==(const FeatureDictionary&,
                         const FeatureDictionary&) = default;
};
using TableDictionary = std::vector<FeatureDictionary>;

struct BundleDictionaries {
  TableDictionary table1;
  TableDictionary table2;

  friend bool operator==(const BundleDictionaries&,
                         const BundleDictionaries&) = default;
};

// Dictionary whose labels are the decimal codes 0..cardinality-1.
TableDictionary NumericDictionary(const Schema& schema);

struct CsvOptions {
  char delimiter = ',';
};

// Parses delimiter-separated text with a header row. Fields may be quoted
// with '"'; a doubled quote inside a quoted field is a literal quote.
absl::StatusOr<std::vector<std::vector<std::string>>> ParseCsv(
    std::string_view text, const CsvOptions& opts);
std::string FormatCsvRow(const std::vector<std::string>& fields,
                         const CsvOptions& opts);

struct LoadedTable {
  Table table;
  TableDictionary dictionary;
  // Values of the declared ID column in row order; empty when none.
  std::vector<std::string> ids;
};

// Reads a table. With `dictionary` set, the columns must match its feature
// names and every label must be known; otherwise labels are inferred. The
// `id_column`, when non-empty, is excluded from the features.
absl::StatusOr<LoadedTable> LoadTable(const std::string& path,
                                      const CsvOptions& opts,
                                      const TableDictionary* dictionary = nullptr,
                                      const std::string& id_column = "");
absl::Status SaveTable(const std::string& path, const Table& table,
                       const TableDictionary& dictionary,
                       const CsvOptions& opts);

struct BundlePaths {
  std::string table1;
  std::string table2;
  std::string relations;

  static BundlePaths InDirectory(const std::string& dir);
};

struct LoadOptions {
  CsvOptions csv;
  RelationshipKind kind = RelationshipKind::kManyToMany;
  // Named ID columns; relations then refer to their values instead of
  // 0-based row indices. Both or neither must be set.
  std::string id1_column;
  std::string id2_column;
  // Keeps only the first d_max_cap relations of every record, in file
  // order; 0 disables the cap.
  int d_max_cap = 0;
  // Enforced encodings; inferred when null.
  const BundleDictionaries* dictionaries = nullptr;
};

struct LoadedBundle {
  RelationalDatabase db;
  BundleDictionaries dictionaries;
  int d_max = 0;           // maximum degree after truncation
  int64_t truncated = 0;   // relations dropped by the cap
};

// Loads and validates a database: duplicate pairs and dangling references
// are errors, as is a one-to-many database failing the integrity check.
absl::StatusOr<LoadedBundle> LoadBundle(const BundlePaths& paths,
                                        const LoadOptions& opts);

// Metadata written next to a saved database.
struct BundleManifest {
  BundleDictionaries dictionaries;
  RelationshipKind kind = RelationshipKind::kManyToMany;
  int64_t m_syn = 0;
  uint64_t seed = 0;
  // Extra JSON object merged into the manifest, e.g. the run record.
  std::string extra_json = "{}";
};

// Writes the four bundle files into `dir`, creating it when needed. Rows
// are written in order and edges in (id1, id2) order, so equal databases
// give byte-identical files.
absl::Status SaveBundle(const RelationalDatabase& db,
                        const BundleManifest& manifest, const std::string& dir,
                        const CsvOptions& opts = {});

absl::StatusOr<BundleManifest> ReadManifest(const std::string& path);

// Loads a saved bundle using the dictionaries and kind of its manifest.
absl::StatusOr<LoadedBundle> LoadBundleDirectory(const std::string& dir,
                                                 const CsvOptions& opts = {});

// Everything a `synthesize` run needs besides the data.
struct RunConfig {
  SynthesisConfig synthesis;
  // Single-table generator used when no synthetic tables are supplied.
  BaselineConfig baseline;
  // Synthetic row counts for the generator; 0 keeps the private counts.
  int n1_syn = 0;
  int n2_syn = 0;
};

// JSON object whose keys mirror the SynthesisConfig field names, with
// nested "pgd" and "baseline" objects and the optional n1_syn / n2_syn.
// Unknown keys are errors.
absl::StatusOr<RunConfig> ParseRunConfig(std::string_view json_text);
std::string RunConfigToJson(const RunConfig& cfg);

std::string BudgetReportToJson(const BudgetReport& report);
std::string BudgetReportToText(const BudgetReport& report);
std::string EvaluationReportToJson(const EvaluationReport& report);
std::string EvaluationReportToText(const EvaluationReport& report);

// Run record for the manifest: config echo, seed, d_max, m, m_syn, the
// budget and, per iteration, the selected workloads and their noisy
// answers. Scores before noise are private and are not included.
std::string RunRecordToJson(const RunConfig& cfg, const SynthesisResult& result);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace dprel

#endif  // DPREL_IO_H_

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

#include "dprel/io.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "json.hpp"

namespace dprel {
namespace {

using Json = nlohmann::ordered_json;

absl::Status DataError(absl::string_view path, absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat(path, ": ", what));
}

absl::Status ReadNumber(const Json& j, const std::string& key, double* out) {
  if (!j.is_number()) {
    return absl::InvalidArgumentError(absl::StrCat(key, " must be a number"));
  }
  *out = j.get<double>();
  return absl::OkStatus();
}

template <typename Int>
absl::Status ReadInteger(const Json& j, const std::string& key, Int* out) {
  if (!j.is_number_integer()) {
    return absl::InvalidArgumentError(absl::StrCat(key, " must be an integer"));
  }
  if (j.is_number_unsigned()) {
    *out = static_cast<Int>(j.get<uint64_t>());
  } else {
    *out = static_cast<Int>(j.get<int64_t>());
  }
  return absl::OkStatus();
}

absl::Status ReadBool(const Json& j, const std::string& key, bool* out) {
  if (!j.is_boolean()) {
    return absl::InvalidArgumentError(absl::StrCat(key, " must be a boolean"));
  }
  *out = j.get<bool>();
  return absl::OkStatus();
}

absl::Status ReadString(const Json& j, const std::string& key,
                        std::string* out) {
  if (!j.is_string()) {
    return absl::InvalidArgumentError(absl::StrCat(key, " must be a string"));
  }
  *out = j.get<std::string>();
  return absl::OkStatus();
}

std::string PgdInitName(PgdInit init) {
  return init == PgdInit::kWarm ? "warm" : "uniform_feasible";
}

absl::Status ParsePgd(const Json& j, PgdConfig* pgd) {
  if (!j.is_object()) return absl::InvalidArgumentError("pgd must be an object");
  for (const auto& [key, value] : j.items()) {
    absl::Status s;
    if (key == "iterations") {
      s = ReadInteger(value, key, &pgd->iterations);
    } else if (key == "power_iterations") {
      s = ReadInteger(value, key, &pgd->power_iterations);
    } else if (key == "projection_tolerance") {
      s = ReadNumber(value, key, &pgd->projection_tolerance);
    } else if (key == "step_size_override") {
      if (value.is_null()) {
        pgd->step_size_override.reset();
      } else {
        double eta = 0.0;
        s = ReadNumber(value, key, &eta);
        pgd->step_size_override = eta;
      }
    } else if (key == "init") {
      std::string name;
      s = ReadString(value, key, &name);
      if (s.ok()) {
        if (name == "warm") {
          pgd->init = PgdInit::kWarm;
        } else if (name == "uniform_feasible") {
          pgd->init = PgdInit::kUniformFeasible;
        } else {
          s = absl::InvalidArgumentError(absl::StrCat("unknown pgd.init ", name));
        }
      }
    } else if (key == "record_trace") {
      s = ReadBool(value, key, &pgd->record_trace);
    } else {
      s = absl::InvalidArgumentError(absl::StrCat("unknown key pgd.", key));
    }
    if (!s.ok()) return s;
  }
  return absl::OkStatus();
}

absl::Status ParseBaseline(const Json& j, BaselineConfig* b) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("baseline must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    absl::Status s;
    if (key == "eps") {
      s = ReadNumber(value, key, &b->eps);
    } else if (key == "delta") {
      s = ReadNumber(value, key, &b->delta);
    } else if (key == "order") {
      s = ReadInteger(value, key, &b->order);
    } else {
      s = absl::InvalidArgumentError(absl::StrCat("unknown key baseline.", key));
    }
    if (!s.ok()) return s;
  }
  return absl::OkStatus();
}

Json PgdToJson(const PgdConfig& p) {
  Json j;
  j["iterations"] = p.iterations;
  j["power_iterations"] = p.power_iterations;
  j["projection_tolerance"] = p.projection_tolerance;
  j["step_size_override"] =
      p.step_size_override ? Json(*p.step_size_override) : Json(nullptr);
  j["init"] = PgdInitName(p.init);
  j["record_trace"] = p.record_trace;
  return j;
}

Json DictionaryToJson(const TableDictionary& dict) {
  Json features = Json::array();
  for (const FeatureDictionary& f : dict) {
    features.push_back({{"name", f.name}, {"labels", f.labels}});
  }
  return features;
}

absl::StatusOr<TableDictionary> DictionaryFromJson(const Json& j) {
  if (!j.is_array()) {
    return absl::InvalidArgumentError("dictionary must be an array");
  }
  TableDictionary dict;
  for (const Json& f : j) {
    if (!f.is_object() || !f.contains("name") || !f.contains("labels") ||
        !f["name"].is_string() || !f["labels"].is_array()) {
      return absl::InvalidArgumentError(
          "dictionary entries need a name and a labels array");
    }
    FeatureDictionary fd;
    fd.name = f["name"].get<std::string>();
    for (const Json& label : f["labels"]) {
      if (!label.is_string()) {
        return absl::InvalidArgumentError("labels must be strings");
      }
      fd.labels.push_back(label.get<std::string>());
    }
    dict.push_back(std::move(fd));
  }
  return dict;
}

Json WorkloadToJson(const Workload& w) {
  return {{"table1", w.side1}, {"table2", w.side2}};
}

absl::StatusOr<Schema> SchemaFromDictionary(const TableDictionary& dict) {
  std::vector<Feature> features;
  for (const FeatureDictionary& f : dict) {
    features.push_back({f.name, static_cast<int>(f.labels.size())});
  }
  return Schema::Create(std::move(features));
}

}  // namespace

TableDictionary NumericDictionary(const Schema& schema) {
  TableDictionary dict;
  for (const Feature& f : schema.features()) {
    FeatureDictionary fd{f.name, {}};
    for (int c = 0; c < f.cardinality; ++c) fd.labels.push_back(absl::StrCat(c));
    dict.push_back(std::move(fd));
  }
  return dict;
}

absl::StatusOr<std::vector<std::vector<std::string>>> ParseCsv(
    std::string_view text, const CsvOptions& opts) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  int line = 1;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    // Skip blank lines.
    if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
    row.clear();
  };
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == opts.delimiter) {
      end_field();
    } else if (c == '\r') {
      continue;
    } else if (c == '\n') {
      end_row();
      ++line;
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (quoted) {
    return absl::InvalidArgumentError(
        absl::StrCat("unterminated quoted field near line ", line));
  }
  if (field_started || !row.empty()) end_row();
  return rows;
}

std::string FormatCsvRow(const std::vector<std::string>& fields,
                         const CsvOptions& opts) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(opts.delimiter);
    const std::string& f = fields[i];
    const bool quote = f.find_first_of(std::string{opts.delimiter, '"', '\n', '\r'}) !=
                       std::string::npos;
    if (!quote) {
      out += f;
      continue;
    }
    out.push_back('"');
    for (char c : f) {
      if (c == '"') out.push_back('"');
      out.push_back(c);
    }
    out.push_back('"');
  }
  out.push_back('\n');
  return out;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return absl::DataLossError(absl::StrCat("cannot read ", path));
  return buf.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("failed writing ", path));
  return absl::OkStatus();
}

absl::StatusOr<LoadedTable> LoadTable(const std::string& path,
                                      const CsvOptions& opts,
                                      const TableDictionary* dictionary,
                                      const std::string& id_column) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<std::vector<std::vector<std::string>>> rows =
      ParseCsv(*text, opts);
  if (!rows.ok()) return DataError(path, rows.status().message());
  if (rows->empty()) return DataError(path, "missing header row");
  const std::vector<std::string>& header = rows->front();
  const int width = static_cast<int>(header.size());

  int id_index = -1;
  std::vector<int> columns;  // header positions of the features
  for (int c = 0; c < width; ++c) {
    if (!id_column.empty() && header[c] == id_column) {
      id_index = c;
    } else {
      columns.push_back(c);
    }
  }
  if (!id_column.empty() && id_index < 0) {
    return DataError(path, absl::StrCat("no ID column '", id_column, "'"));
  }
  const int d = static_cast<int>(columns.size());
  const int n = static_cast<int>(rows->size()) - 1;
  for (int r = 1; r <= n; ++r) {
    if (static_cast<int>((*rows)[r].size()) != width) {
      return DataError(path, absl::StrCat("row ", r, " has ",
                                          (*rows)[r].size(), " fields, expected ",
                                          width));
    }
  }

  LoadedTable out;
  if (dictionary != nullptr) {
    if (static_cast<int>(dictionary->size()) != d) {
      return DataError(path, absl::StrCat("expected ", dictionary->size(),
                                          " feature columns, found ", d));
    }
    for (int f = 0; f < d; ++f) {
      if (header[columns[f]] != (*dictionary)[f].name) {
        return DataError(path, absl::StrCat("column ", f, " is '",
                                            header[columns[f]], "', expected '",
                                            (*dictionary)[f].name, "'"));
      }
    }
    out.dictionary = *dictionary;
  } else {
    for (int f = 0; f < d; ++f) {
      std::set<std::string> labels;
      for (int r = 1; r <= n; ++r) labels.insert((*rows)[r][columns[f]]);
      out.dictionary.push_back(
          {header[columns[f]], std::vector<std::string>(labels.begin(), labels.end())});
    }
  }
  std::vector<std::unordered_map<std::string, int>> lookup(d);
  for (int f = 0; f < d; ++f) {
    const std::vector<std::string>& labels = out.dictionary[f].labels;
    for (int c = 0; c < static_cast<int>(labels.size()); ++c) {
      lookup[f].emplace(labels[c], c);
    }
  }
  std::vector<int> codes(static_cast<size_t>(n) * d);
  for (int r = 1; r <= n; ++r) {
    for (int f = 0; f < d; ++f) {
      const std::string& label = (*rows)[r][columns[f]];
      auto it = lookup[f].find(label);
      if (it == lookup[f].end()) {
        return DataError(path, absl::StrCat("unknown label '", label,
                                            "' in column '",
                                            out.dictionary[f].name, "'"));
      }
      codes[static_cast<size_t>(r - 1) * d + f] = it->second;
    }
    if (id_index >= 0) out.ids.push_back((*rows)[r][id_index]);
  }
  absl::StatusOr<Schema> schema = SchemaFromDictionary(out.dictionary);
  if (!schema.ok()) return DataError(path, schema.status().message());
  absl::StatusOr<Table> table = Table::FromCodes(*std::move(schema), std::move(codes));
  if (!table.ok()) return DataError(path, table.status().message());
  out.table = *std::move(table);
  return out;
}

absl::Status SaveTable(const std::string& path, const Table& table,
                       const TableDictionary& dictionary,
                       const CsvOptions& opts) {
  const int d = table.num_features();
  if (static_cast<int>(dictionary.size()) != d) {
    return absl::InvalidArgumentError("dictionary does not match the schema");
  }
  for (int f = 0; f < d; ++f) {
    if (static_cast<int>(dictionary[f].labels.size()) != table.schema().cardinality(f)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "dictionary of '", dictionary[f].name, "' has the wrong size"));
    }
  }
  std::vector<std::string> fields(d);
  for (int f = 0; f < d; ++f) fields[f] = dictionary[f].name;
  std::string out = FormatCsvRow(fields, opts);
  for (int r = 0; r < table.num_rows(); ++r) {
    for (int f = 0; f < d; ++f) fields[f] = dictionary[f].labels[table.code(r, f)];
    out += FormatCsvRow(fields, opts);
  }
  return WriteFile(path, out);
}

BundlePaths BundlePaths::InDirectory(const std::string& dir) {
  const std::filesystem::path base(dir);
  return {(base / kTable1File).string(), (base / kTable2File).string(),
          (base / kRelationsFile).string()};
}

absl::StatusOr<LoadedBundle> LoadBundle(const BundlePaths& paths,
                                        const LoadOptions& opts) {
  if (opts.id1_column.empty() != opts.id2_column.empty()) {
    return absl::InvalidArgumentError(
        "declare both ID columns or neither");
  }
  absl::StatusOr<LoadedTable> t1 = LoadTable(
      paths.table1, opts.csv,
      opts.dictionaries ? &opts.dictionaries->table1 : nullptr, opts.id1_column);
  if (!t1.ok()) return t1.status();
  absl::StatusOr<LoadedTable> t2 = LoadTable(
      paths.table2, opts.csv,
      opts.dictionaries ? &opts.dictionaries->table2 : nullptr, opts.id2_column);
  if (!t2.ok()) return t2.status();
  const int n1 = t1->table.num_rows();
  const int n2 = t2->table.num_rows();

  // Resolves a relation field to a row index.
  auto index_of = [](const std::vector<std::string>& ids) {
    std::unordered_map<std::string, int> map;
    for (int r = 0; r < static_cast<int>(ids.size()); ++r) map.emplace(ids[r], r);
    return map;
  };
  const bool by_id = !opts.id1_column.empty();
  std::unordered_map<std::string, int> ids1, ids2;
  if (by_id) {
    ids1 = index_of(t1->ids);
    ids2 = index_of(t2->ids);
    if (ids1.size() != t1->ids.size() || ids2.size() != t2->ids.size()) {
      return absl::InvalidArgumentError("ID columns contain duplicate values");
    }
  }
  auto resolve = [&](const std::string& field, int n,
                     const std::unordered_map<std::string, int>& ids,
                     int* out) -> bool {
    if (by_id) {
      auto it = ids.find(field);
      if (it == ids.end()) return false;
      *out = it->second;
      return true;
    }
    int v = 0;
    if (!absl::SimpleAtoi(field, &v) || v < 0 || v >= n) return false;
    *out = v;
    return true;
  };

  absl::StatusOr<std::string> text = ReadFile(paths.relations);
  if (!text.ok()) return text.status();
  absl::StatusOr<std::vector<std::vector<std::string>>> rows =
      ParseCsv(*text, opts.csv);
  if (!rows.ok()) return DataError(paths.relations, rows.status().message());
  if (rows->empty()) return DataError(paths.relations, "missing header row");
  if (rows->front().size() != 2) {
    return DataError(paths.relations, "expected two columns (id1, id2)");
  }

  LoadedBundle out;
  std::set<Edge> seen;
  std::vector<Edge> kept;
  std::vector<int> deg1(n1, 0), deg2(n2, 0);
  for (size_t r = 1; r < rows->size(); ++r) {
    const std::vector<std::string>& row = (*rows)[r];
    if (row.size() != 2) {
      return DataError(paths.relations, absl::StrCat("row ", r, " needs 2 fields"));
    }
    int i = 0, j = 0;
    if (!resolve(row[0], n1, ids1, &i) || !resolve(row[1], n2, ids2, &j)) {
      return DataError(paths.relations,
                       absl::StrCat("dangling reference (", row[0], ", ",
                                    row[1], ") on row ", r));
    }
    if (!seen.insert({i, j}).second) {
      return DataError(paths.relations,
                       absl::StrCat("duplicate pair (", row[0], ", ", row[1],
                                    ") on row ", r));
    }
    if (opts.d_max_cap > 0 &&
        (deg1[i] >= opts.d_max_cap || deg2[j] >= opts.d_max_cap)) {
      ++out.truncated;
      continue;
    }
    ++deg1[i];
    ++deg2[j];
    kept.emplace_back(i, j);
  }
  absl::StatusOr<BiAdjacency> adj = BiAdjacency::Create(n1, n2, kept);
  if (!adj.ok()) return DataError(paths.relations, adj.status().message());
  absl::StatusOr<RelationalDatabase> db =
      RelationalDatabase::Create(std::move(t1->table), std::move(t2->table),
                                 *std::move(adj), opts.kind);
  if (!db.ok()) return db.status();
  IntegrityReport integrity = ValidateIntegrity(*db);
  if (!integrity.ok()) {
    return DataError(paths.relations, integrity.violations.front());
  }
  out.db = *std::move(db);
  out.dictionaries = {std::move(t1->dictionary), std::move(t2->dictionary)};
  out.d_max = MaxDegree(out.db);
  return out;
}

absl::Status SaveBundle(const RelationalDatabase& db,
                        const BundleManifest& manifest, const std::string& dir,
                        const CsvOptions& opts) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create ", dir, ": ", ec.message()));
  }
  const BundlePaths paths = BundlePaths::InDirectory(dir);
  if (absl::Status s = SaveTable(paths.table1, db.table1,
                                 manifest.dictionaries.table1, opts);
      !s.ok()) {
    return s;
  }
  if (absl::Status s = SaveTable(paths.table2, db.table2,
                                 manifest.dictionaries.table2, opts);
      !s.ok()) {
    return s;
  }
  std::string relations = FormatCsvRow({"id1", "id2"}, opts);
  for (const Edge& e : db.adjacency.edges()) {
    relations += FormatCsvRow({absl::StrCat(e.first), absl::StrCat(e.second)}, opts);
  }
  if (absl::Status s = WriteFile(paths.relations, relations); !s.ok()) return s;

  Json j;
  j["kind"] = RelationshipKindName(manifest.kind);
  j["m_syn"] = manifest.m_syn;
  j["seed"] = manifest.seed;
  j["rows"] = {db.table1.num_rows(), db.table2.num_rows()};
  j["dictionaries"] = {{"table1", DictionaryToJson(manifest.dictionaries.table1)},
                       {"table2", DictionaryToJson(manifest.dictionaries.table2)}};
  Json extra = Json::parse(manifest.extra_json, nullptr, false);
  if (extra.is_discarded() || !extra.is_object()) {
    return absl::InvalidArgumentError("manifest extra must be a JSON object");
  }
  for (const auto& [key, value] : extra.items()) j[key] = value;
  return WriteFile((std::filesystem::path(dir) / kManifestFile).string(),
                   j.dump(2) + "\n");
}

absl::StatusOr<BundleManifest> ReadManifest(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  Json j = Json::parse(*text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return DataError(path, "not a JSON object");
  }
  BundleManifest m;
  if (!j.contains("dictionaries") || !j["dictionaries"].is_object()) {
    return DataError(path, "missing dictionaries");
  }
  absl::StatusOr<TableDictionary> d1 =
      DictionaryFromJson(j["dictionaries"].value("table1", Json()));
  if (!d1.ok()) return DataError(path, d1.status().message());
  absl::StatusOr<TableDictionary> d2 =
      DictionaryFromJson(j["dictionaries"].value("table2", Json()));
  if (!d2.ok()) return DataError(path, d2.status().message());
  m.dictionaries = {*std::move(d1), *std::move(d2)};
  if (j.contains("kind")) {
    std::string kind;
    if (absl::Status s = ReadString(j["kind"], "kind", &kind); !s.ok()) {
      return DataError(path, s.message());
    }
    absl::StatusOr<RelationshipKind> parsed = ParseRelationshipKind(kind);
    if (!parsed.ok()) return DataError(path, parsed.status().message());
    m.kind = *parsed;
  }
  if (j.contains("m_syn")) {
    if (absl::Status s = ReadInteger(j["m_syn"], "m_syn", &m.m_syn); !s.ok()) {
      return DataError(path, s.message());
    }
  }
  if (j.contains("seed")) {
    if (absl::Status s = ReadInteger(j["seed"], "seed", &m.seed); !s.ok()) {
      return DataError(path, s.message());
    }
  }
  Json extra = Json::object();
  for (const auto& [key, value] : j.items()) {
    if (key != "kind" && key != "m_syn" && key != "seed" && key != "rows" &&
        key != "dictionaries") {
      extra[key] = value;
    }
  }
  m.extra_json = extra.dump();
  return m;
}

absl::StatusOr<LoadedBundle> LoadBundleDirectory(const std::string& dir,
                                                 const CsvOptions& opts) {
  absl::StatusOr<BundleManifest> manifest =
      ReadManifest((std::filesystem::path(dir) / kManifestFile).string());
  if (!manifest.ok()) return manifest.status();
  LoadOptions lo;
  lo.csv = opts;
  lo.kind = manifest->kind;
  lo.dictionaries = &manifest->dictionaries;
  return LoadBundle(BundlePaths::InDirectory(dir), lo);
}

absl::StatusOr<RunConfig> ParseRunConfig(std::string_view json_text) {
  Json j = Json::parse(json_text, nullptr, false);
  if (j.is_discarded()) return absl::InvalidArgumentError("config is not valid JSON");
  if (!j.is_object()) return absl::InvalidArgumentError("config must be an object");
  RunConfig cfg;
  SynthesisConfig& s = cfg.synthesis;
  for (const auto& [key, value] : j.items()) {
    absl::Status st;
    if (key == "eps_rel") {
      st = ReadNumber(value, key, &s.eps_rel);
    } else if (key == "delta_rel") {
      st = ReadNumber(value, key, &s.delta_rel);
    } else if (key == "T") {
      st = ReadInteger(value, key, &s.T);
    } else if (key == "K") {
      st = ReadInteger(value, key, &s.K);
    } else if (key == "alpha") {
      st = ReadNumber(value, key, &s.alpha);
    } else if (key == "k") {
      st = ReadInteger(value, key, &s.k);
    } else if (key == "m_syn") {
      st = ReadInteger(value, key, &s.m_syn);
    } else if (key == "slice_rows") {
      st = ReadInteger(value, key, &s.slice_rows);
    } else if (key == "slice_cols") {
      st = ReadInteger(value, key, &s.slice_cols);
    } else if (key == "n_slices") {
      st = ReadInteger(value, key, &s.n_slices);
    } else if (key == "min_related_fraction") {
      st = ReadNumber(value, key, &s.min_related_fraction);
    } else if (key == "top_error_workloads") {
      st = ReadInteger(value, key, &s.top_error_workloads);
    } else if (key == "pgd") {
      st = ParsePgd(value, &s.pgd);
    } else if (key == "seed") {
      st = ReadInteger(value, key, &s.seed);
    } else if (key == "kind") {
      std::string name;
      st = ReadString(value, key, &name);
      if (st.ok()) {
        absl::StatusOr<RelationshipKind> kind = ParseRelationshipKind(name);
        if (kind.ok()) {
          s.kind = *kind;
        } else {
          st = kind.status();
        }
      }
    } else if (key == "workload_subsample") {
      st = ReadInteger(value, key, &s.workload_subsample);
    } else if (key == "d_max") {
      st = ReadInteger(value, key, &s.d_max);
    } else if (key == "baseline") {
      st = ParseBaseline(value, &cfg.baseline);
    } else if (key == "n1_syn") {
      st = ReadInteger(value, key, &cfg.n1_syn);
    } else if (key == "n2_syn") {
      st = ReadInteger(value, key, &cfg.n2_syn);
    } else {
      st = absl::InvalidArgumentError(absl::StrCat("unknown config key ", key));
    }
    if (!st.ok()) return st;
  }
  return cfg;
}

namespace {

Json RunConfigJson(const RunConfig& cfg) {
  const SynthesisConfig& s = cfg.synthesis;
  Json j;
  j["eps_rel"] = s.eps_rel;
  j["delta_rel"] = s.delta_rel;
  j["T"] = s.T;
  j["K"] = s.K;
  j["alpha"] = s.alpha;
  j["k"] = s.k;
  j["m_syn"] = s.m_syn;
  j["slice_rows"] = s.slice_rows;
  j["slice_cols"] = s.slice_cols;
  j["n_slices"] = s.n_slices;
  j["min_related_fraction"] = s.min_related_fraction;
  j["top_error_workloads"] = s.top_error_workloads;
  j["pgd"] = PgdToJson(s.pgd);
  j["seed"] = s.seed;
  j["kind"] = RelationshipKindName(s.kind);
  j["workload_subsample"] = s.workload_subsample;
  j["d_max"] = s.d_max;
  j["baseline"] = {{"eps", cfg.baseline.eps},
                   {"delta", cfg.baseline.delta},
                   {"order", cfg.baseline.order}};
  j["n1_syn"] = cfg.n1_syn;
  j["n2_syn"] = cfg.n2_syn;
  return j;
}

Json BudgetJson(const BudgetReport& r) {
  Json j;
  j["rho_total"] = r.rho_total;
  j["eps0"] = r.eps0;
  j["alpha"] = r.alpha;
  j["workloads_per_iteration"] = r.workloads_per_iteration;
  j["iterations"] = r.iterations;
  j["per_iteration_spend"] = r.per_iteration_spend;
  j["rho_spent"] = r.rho_spent;
  j["delta"] = r.delta;
  j["eps_equivalent_at_delta"] = r.eps_equivalent_at_delta;
  return j;
}

}  // namespace

std::string RunConfigToJson(const RunConfig& cfg) {
  return RunConfigJson(cfg).dump(2) + "\n";
}

std::string BudgetReportToJson(const BudgetReport& report) {
  return BudgetJson(report).dump(2) + "\n";
}

std::string BudgetReportToText(const BudgetReport& r) {
  return absl::StrFormat(
      "rho_rel                 %.12g\n"
      "eps0                    %.12g\n"
      "alpha                   %.12g\n"
      "workloads/iteration K   %d\n"
      "iterations T            %d\n"
      "rho per iteration       %.12g\n"
      "rho spent               %.12g\n"
      "delta                   %.12g\n"
      "eps at delta            %.12g\n",
      r.rho_total, r.eps0, r.alpha, r.workloads_per_iteration, r.iterations,
      r.per_iteration_spend, r.rho_spent, r.delta, r.eps_equivalent_at_delta);
}

std::string EvaluationReportToJson(const EvaluationReport& report) {
  Json j;
  j["k"] = report.k;
  j["average_error"] = report.average_error;
  j["mse"] = report.mse;
  Json per = Json::array();
  for (const WorkloadError& e : report.per_workload) {
    Json w = WorkloadToJson(e.workload);
    w["l1_error"] = e.l1_error;
    w["squared_error"] = e.squared_error;
    per.push_back(std::move(w));
  }
  j["per_workload"] = std::move(per);
  return j.dump(2) + "\n";
}

std::string EvaluationReportToText(const EvaluationReport& report) {
  std::string out = absl::StrFormat(
      "%d-way cross workloads: %d\naverage L1 error  %.6g\nmse               %.6g\n",
      report.k, report.per_workload.size(), report.average_error, report.mse);
  for (const WorkloadError& e : report.per_workload) {
    absl::StrAppendFormat(&out, "  %-16s l1 %.6g\n", e.workload.ToString(),
                          e.l1_error);
  }
  return out;
}

std::string RunRecordToJson(const RunConfig& cfg, const SynthesisResult& result) {
  Json j;
  j["config"] = RunConfigJson(cfg);
  j["seed"] = cfg.synthesis.seed;
  j["d_max"] = result.d_max;
  j["m"] = result.m_real;
  j["m_syn"] = cfg.synthesis.m_syn;
  j["budget"] = BudgetJson(result.budget);
  Json iterations = Json::array();
  for (const IterationLog& it : result.iterations) {
    Json entry;
    entry["iteration"] = it.iteration;
    Json selected = Json::array();
    for (size_t s = 0; s < it.selected.size(); ++s) {
      Json w = WorkloadToJson(it.selected[s]);
      w["noisy_answers"] = it.noisy_answers[s];
      selected.push_back(std::move(w));
    }
    entry["selected"] = std::move(selected);
    Json optimized = Json::array();
    for (const Workload& w : it.optimized) optimized.push_back(WorkloadToJson(w));
    entry["optimized"] = std::move(optimized);
    Json slices = Json::array();
    for (const SliceLog& s : it.slices) {
      slices.push_back({{"rows", s.rows},
                        {"cols", s.cols},
                        {"edges", s.edges},
                        {"skipped", s.skipped}});
    }
    entry["slices"] = std::move(slices);
    entry["rho_spent"] = it.rho_spent;
    iterations.push_back(std::move(entry));
  }
  j["iterations"] = std::move(iterations);
  return j.dump();
}

}  // namespace dprel

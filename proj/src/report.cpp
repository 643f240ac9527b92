// Copyright 2026 The camus-bench Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "camus/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>

#include "camus/error.hpp"
#include "camus/number_format.hpp"
#include "json.hpp"

namespace camus {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------- enums

template <class E, std::size_t N>
std::optional<E> lookup(std::string_view token, const E (&all)[N]) {
  for (E e : all) {
    if (to_string(e) == token) return e;
  }
  return std::nullopt;
}

template <class E, class Parser>
E require_enum(std::string_view token, Parser parse, std::string_view what) {
  const auto v = parse(token);
  if (!v) throw FormatError("unknown " + std::string(what) + " '" + std::string(token) + "'", std::string(what));
  return *v;
}

std::optional<ClinicalIndex> parse_clinical_index(std::string_view token) {
  return lookup(token, kAllClinicalIndices);
}

// ---------------------------------------------------------------- JSON

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double distance_from_json(const Json& j) { return j.is_null() ? kInf : j.get<double>(); }

Json mean_std_json(const MeanStd& m) { return Json{{"n", m.n}, {"mean", m.mean}, {"std", m.std}}; }

MeanStd mean_std_from_json(const Json& j) {
  return {j.at("n").get<std::size_t>(), j.at("mean").get<double>(), j.at("std").get<double>()};
}

Json clinical_scores_json(const ClinicalScores& c) {
  return Json{{"edv", c.edv}, {"esv", c.esv}, {"ef", c.ef}};
}

ClinicalScores clinical_scores_from_json(const Json& j) {
  return {j.at("edv").get<double>(), j.at("esv").get<double>(), j.at("ef").get<double>()};
}

template <class E>
Json enum_list_json(const std::vector<E>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(std::string(to_string(v)));
  return out;
}

Json to_json(const MethodReport& r) {
  Json j;
  j["engine"] = {{"name", std::string(kEngineName)},
                 {"version", r.meta.engine_version},
                 {"axis_construction", r.meta.axis_construction}};
  j["method"] = r.meta.method;
  j["options"] = {{"postprocess", r.meta.postprocess},
                  {"discs", r.meta.discs},
                  {"outlier_mode", std::string(to_string(r.meta.outlier_mode))},
                  {"outlier_rule",
                   {{"dm_max_ed", r.meta.outlier_rule.dm_max_ed},
                    {"dm_max_es", r.meta.outlier_rule.dm_max_es},
                    {"dh_max_ed", r.meta.outlier_rule.dh_max_ed},
                    {"dh_max_es", r.meta.outlier_rule.dh_max_es}}}};
  j["cohort"] = {{"qualities", enum_list_json(r.cohort.qualities)},
                 {"folds", r.cohort.folds},
                 {"views", enum_list_json(r.cohort.views)},
                 {"instants", enum_list_json(r.cohort.instants)},
                 {"cases", r.cohort.cases},
                 {"patients", r.cohort.patients}};

  Json geometric = Json::array();
  for (const auto& g : r.geometric) {
    geometric.push_back({{"structure", std::string(to_string(g.structure))},
                         {"instant", std::string(to_string(g.instant))},
                         {"scored", g.scored},
                         {"failed", g.failed},
                         {"dice", mean_std_json(g.dice)},
                         {"dm", mean_std_json(g.d_m)},
                         {"dh", mean_std_json(g.d_H)}});
  }
  j["geometric"] = std::move(geometric);

  Json clinical = Json::array();
  for (const auto& c : r.clinical) {
    clinical.push_back({{"index", std::string(to_string(c.index))},
                        {"n", c.stats.n},
                        {"corr", c.stats.corr ? Json(*c.stats.corr) : Json(nullptr)},
                        {"bias", c.stats.bias},
                        {"std", c.stats.std},
                        {"mae", c.stats.mae},
                        {"loa_low", c.stats.loa_low},
                        {"loa_high", c.stats.loa_high}});
  }
  j["clinical"] = std::move(clinical);

  Json flagged = Json::array();
  for (const auto& k : r.outliers.flagged) {
    flagged.push_back({{"patient_id", k.patient_id},
                       {"view", std::string(to_string(k.view))},
                       {"instant", std::string(to_string(k.instant))}});
  }
  j["outliers"] = {{"classified", r.outliers.classified},
                   {"count", r.outliers.flagged.size()},
                   {"rate", r.outliers.rate()},
                   {"cases", std::move(flagged)}};

  Json cases = Json::array();
  Json failures = Json::array();
  for (const auto& c : r.cases) {
    Json row{{"patient_id", c.patient_id},
             {"view", std::string(to_string(c.view))},
             {"instant", std::string(to_string(c.instant))},
             {"structure", std::string(to_string(c.structure))},
             {"status", std::string(to_string(c.status))},
             {"dice", c.scores.dice},
             {"dm", number_or_null(c.scores.d_m)},
             {"dh", number_or_null(c.scores.d_H)},
             {"reason", c.reason}};
    if (!c.scored()) {
      failures.push_back({{"kind", "case"},
                          {"id", to_string(c.key()) + "/" + std::string(to_string(c.structure))},
                          {"status", std::string(to_string(c.status))},
                          {"reason", c.reason}});
    }
    cases.push_back(std::move(row));
  }
  j["cases"] = std::move(cases);

  Json patients = Json::array();
  for (const auto& p : r.patients) {
    patients.push_back({{"patient_id", p.patient_id},
                        {"status", p.ok ? "ok" : "failed"},
                        {"reason", p.reason},
                        {"pred", clinical_scores_json(p.pred)},
                        {"ref", clinical_scores_json(p.ref)}});
    if (!p.ok) {
      failures.push_back({{"kind", "patient"}, {"id", p.patient_id}, {"status", "failed"}, {"reason", p.reason}});
    }
  }
  j["patients"] = std::move(patients);
  j["failures"] = std::move(failures);
  return j;
}

template <class E, class Parser>
std::vector<E> enum_list_from_json(const Json& j, Parser parse, std::string_view what) {
  std::vector<E> out;
  for (const auto& v : j) out.push_back(require_enum<E>(v.get<std::string>(), parse, what));
  return out;
}

MethodReport from_json(const Json& j) {
  MethodReport r;
  const auto& engine = j.at("engine");
  r.meta.engine_version = engine.at("version").get<std::string>();
  r.meta.axis_construction = engine.at("axis_construction").get<std::string>();
  r.meta.method = j.at("method").get<std::string>();
  const auto& options = j.at("options");
  r.meta.postprocess = options.at("postprocess").get<bool>();
  r.meta.discs = options.at("discs").get<std::size_t>();
  r.meta.outlier_mode = require_enum<OutlierMode>(options.at("outlier_mode").get<std::string>(), parse_outlier_mode,
                                                  "outlier_mode");
  const auto& rule = options.at("outlier_rule");
  r.meta.outlier_rule = {rule.at("dm_max_ed").get<double>(), rule.at("dm_max_es").get<double>(),
                         rule.at("dh_max_ed").get<double>(), rule.at("dh_max_es").get<double>()};

  const auto& cohort = j.at("cohort");
  r.cohort.qualities = enum_list_from_json<Quality>(cohort.at("qualities"), parse_quality, "quality");
  r.cohort.folds = cohort.at("folds").get<std::vector<int>>();
  r.cohort.views = enum_list_from_json<View>(cohort.at("views"), parse_view, "view");
  r.cohort.instants = enum_list_from_json<Instant>(cohort.at("instants"), parse_instant, "instant");
  r.cohort.cases = cohort.at("cases").get<std::size_t>();
  r.cohort.patients = cohort.at("patients").get<std::size_t>();

  for (const auto& g : j.at("geometric")) {
    GeometricAggregate a;
    a.structure = require_enum<StructureId>(g.at("structure").get<std::string>(), parse_structure, "structure");
    a.instant = require_enum<Instant>(g.at("instant").get<std::string>(), parse_instant, "instant");
    a.scored = g.at("scored").get<std::size_t>();
    a.failed = g.at("failed").get<std::size_t>();
    a.dice = mean_std_from_json(g.at("dice"));
    a.d_m = mean_std_from_json(g.at("dm"));
    a.d_H = mean_std_from_json(g.at("dh"));
    r.geometric.push_back(a);
  }
  for (const auto& c : j.at("clinical")) {
    ClinicalAggregate a;
    a.index = require_enum<ClinicalIndex>(c.at("index").get<std::string>(), parse_clinical_index, "index");
    a.stats.n = c.at("n").get<std::size_t>();
    if (!c.at("corr").is_null()) a.stats.corr = c.at("corr").get<double>();
    a.stats.bias = c.at("bias").get<double>();
    a.stats.std = c.at("std").get<double>();
    a.stats.mae = c.at("mae").get<double>();
    a.stats.loa_low = c.at("loa_low").get<double>();
    a.stats.loa_high = c.at("loa_high").get<double>();
    r.clinical.push_back(a);
  }
  const auto& outliers = j.at("outliers");
  r.outliers.classified = outliers.at("classified").get<std::size_t>();
  for (const auto& k : outliers.at("cases")) {
    r.outliers.flagged.push_back({k.at("patient_id").get<std::string>(),
                                  require_enum<View>(k.at("view").get<std::string>(), parse_view, "view"),
                                  require_enum<Instant>(k.at("instant").get<std::string>(), parse_instant, "instant")});
  }
  for (const auto& c : j.at("cases")) {
    CaseScore s;
    s.patient_id = c.at("patient_id").get<std::string>();
    s.view = require_enum<View>(c.at("view").get<std::string>(), parse_view, "view");
    s.instant = require_enum<Instant>(c.at("instant").get<std::string>(), parse_instant, "instant");
    s.structure = require_enum<StructureId>(c.at("structure").get<std::string>(), parse_structure, "structure");
    s.status = require_enum<CaseStatus>(c.at("status").get<std::string>(), parse_case_status, "status");
    s.scores.dice = c.at("dice").get<double>();
    s.scores.d_m = distance_from_json(c.at("dm"));
    s.scores.d_H = distance_from_json(c.at("dh"));
    s.reason = c.at("reason").get<std::string>();
    r.cases.push_back(std::move(s));
  }
  for (const auto& p : j.at("patients")) {
    PatientClinical pc;
    pc.patient_id = p.at("patient_id").get<std::string>();
    pc.ok = p.at("status").get<std::string>() == "ok";
    pc.reason = p.at("reason").get<std::string>();
    pc.pred = clinical_scores_from_json(p.at("pred"));
    pc.ref = clinical_scores_from_json(p.at("ref"));
    r.patients.push_back(std::move(pc));
  }
  return r;
}

// ---------------------------------------------------------------- CSV

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (quoted) throw FormatError("unterminated quoted CSV field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

constexpr std::string_view kReportCsvHeader = "section,patient_id,view,instant,group,field,value";

struct CsvWriter {
  std::string out{std::string(kReportCsvHeader) + "\n"};

  void row(std::string_view section, std::string_view patient, std::string_view view, std::string_view instant,
           std::string_view group, std::string_view field, std::string_view value) {
    for (std::string_view part : {section, patient, view, instant, group, field}) {
      out += csv_escape(part);
      out += ',';
    }
    out += csv_escape(value);
    out += '\n';
  }
  void meta(std::string_view field, std::string_view value) { row("meta", "", "", "", "", field, value); }
};

template <class T>
std::string join_list(const std::vector<T>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ';';
    if constexpr (std::is_same_v<T, int>) {
      out += std::to_string(v);
    } else {
      out += to_string(v);
    }
  }
  return out;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto semi = text.find(';', start);
    out.emplace_back(text.substr(start, semi - start));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return out;
}

std::string render_csv(const MethodReport& r) {
  CsvWriter w;
  w.meta("engine_name", kEngineName);
  w.meta("engine_version", r.meta.engine_version);
  w.meta("axis_construction", r.meta.axis_construction);
  w.meta("method", r.meta.method);
  w.meta("postprocess", r.meta.postprocess ? "true" : "false");
  w.meta("discs", std::to_string(r.meta.discs));
  w.meta("outlier_mode", to_string(r.meta.outlier_mode));
  w.meta("dm_max_ed", format_double(r.meta.outlier_rule.dm_max_ed));
  w.meta("dm_max_es", format_double(r.meta.outlier_rule.dm_max_es));
  w.meta("dh_max_ed", format_double(r.meta.outlier_rule.dh_max_ed));
  w.meta("dh_max_es", format_double(r.meta.outlier_rule.dh_max_es));
  w.meta("qualities", join_list(r.cohort.qualities));
  w.meta("folds", join_list(r.cohort.folds));
  w.meta("views", join_list(r.cohort.views));
  w.meta("instants", join_list(r.cohort.instants));
  w.meta("cases", std::to_string(r.cohort.cases));
  w.meta("patients", std::to_string(r.cohort.patients));

  for (const auto& g : r.geometric) {
    const auto put = [&](std::string_view field, std::string value) {
      w.row("geometric", "", "", to_string(g.instant), to_string(g.structure), field, value);
    };
    put("scored", std::to_string(g.scored));
    put("failed", std::to_string(g.failed));
    for (const auto& [name, ms] : {std::pair{"dice", &g.dice}, std::pair{"dm", &g.d_m}, std::pair{"dh", &g.d_H}}) {
      put(std::string(name) + "_n", std::to_string(ms->n));
      put(std::string(name) + "_mean", format_double(ms->mean));
      put(std::string(name) + "_std", format_double(ms->std));
    }
  }
  for (const auto& c : r.clinical) {
    const auto put = [&](std::string_view field, std::string value) {
      w.row("clinical", "", "", "", to_string(c.index), field, value);
    };
    put("n", std::to_string(c.stats.n));
    put("corr", c.stats.corr ? format_double(*c.stats.corr) : "");
    put("bias", format_double(c.stats.bias));
    put("std", format_double(c.stats.std));
    put("mae", format_double(c.stats.mae));
    put("loa_low", format_double(c.stats.loa_low));
    put("loa_high", format_double(c.stats.loa_high));
  }
  w.row("outliers", "", "", "", "", "classified", std::to_string(r.outliers.classified));
  for (const auto& k : r.outliers.flagged) {
    w.row("outlier_case", k.patient_id, to_string(k.view), to_string(k.instant), "", "flagged", "true");
  }
  for (const auto& c : r.cases) {
    const auto put = [&](std::string_view field, std::string value) {
      w.row("case", c.patient_id, to_string(c.view), to_string(c.instant), to_string(c.structure), field, value);
    };
    put("status", std::string(to_string(c.status)));
    put("dice", format_double(c.scores.dice));
    put("dm", format_double(c.scores.d_m));
    put("dh", format_double(c.scores.d_H));
    put("reason", c.reason);
  }
  for (const auto& p : r.patients) {
    const auto put = [&](std::string_view field, std::string value) {
      w.row("patient", p.patient_id, "", "", "", field, value);
    };
    put("status", p.ok ? "ok" : "failed");
    put("reason", p.reason);
    put("edv_pred", format_double(p.pred.edv));
    put("esv_pred", format_double(p.pred.esv));
    put("ef_pred", format_double(p.pred.ef));
    put("edv_ref", format_double(p.ref.edv));
    put("esv_ref", format_double(p.ref.esv));
    put("ef_ref", format_double(p.ref.ef));
  }
  return std::move(w.out);
}

double require_double(std::string_view text, std::string_view field) {
  const auto v = parse_double(text);
  if (!v) throw FormatError("field '" + std::string(field) + "' is not a number: '" + std::string(text) + "'",
                            std::string(field));
  return *v;
}

std::size_t require_count(std::string_view text, std::string_view field) {
  const auto v = parse_int(text);
  if (!v || *v < 0) throw FormatError("field '" + std::string(field) + "' is not a count: '" + std::string(text) + "'",
                                      std::string(field));
  return static_cast<std::size_t>(*v);
}

MethodReport parse_csv_report(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw FormatError("report CSV is empty");
  std::string header;
  for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + rows[0][i];
  if (header != kReportCsvHeader) throw FormatError("report CSV header must be '" + std::string(kReportCsvHeader) + "'");

  MethodReport r;
  std::map<std::pair<StructureId, Instant>, GeometricAggregate> geometric;
  std::vector<std::pair<StructureId, Instant>> geometric_order;
  std::map<ClinicalIndex, ClinicalAggregate> clinical;
  std::vector<ClinicalIndex> clinical_order;
  std::map<std::tuple<CaseKey, StructureId>, std::size_t> case_index;
  std::map<std::string, std::size_t> patient_index;

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 7) throw FormatError("report CSV line " + std::to_string(i + 1) + " must have 7 fields");
    const std::string& section = row[0];
    const std::string& field = row[5];
    const std::string& value = row[6];

    if (section == "meta") {
      if (field == "engine_version") r.meta.engine_version = value;
      else if (field == "axis_construction") r.meta.axis_construction = value;
      else if (field == "method") r.meta.method = value;
      else if (field == "postprocess") r.meta.postprocess = value == "true";
      else if (field == "discs") r.meta.discs = require_count(value, field);
      else if (field == "outlier_mode") r.meta.outlier_mode = require_enum<OutlierMode>(value, parse_outlier_mode, field);
      else if (field == "dm_max_ed") r.meta.outlier_rule.dm_max_ed = require_double(value, field);
      else if (field == "dm_max_es") r.meta.outlier_rule.dm_max_es = require_double(value, field);
      else if (field == "dh_max_ed") r.meta.outlier_rule.dh_max_ed = require_double(value, field);
      else if (field == "dh_max_es") r.meta.outlier_rule.dh_max_es = require_double(value, field);
      else if (field == "qualities") {
        for (const auto& t : split_list(value)) r.cohort.qualities.push_back(require_enum<Quality>(t, parse_quality, field));
      } else if (field == "folds") {
        for (const auto& t : split_list(value)) r.cohort.folds.push_back(static_cast<int>(require_count(t, field)));
      } else if (field == "views") {
        for (const auto& t : split_list(value)) r.cohort.views.push_back(require_enum<View>(t, parse_view, field));
      } else if (field == "instants") {
        for (const auto& t : split_list(value)) r.cohort.instants.push_back(require_enum<Instant>(t, parse_instant, field));
      } else if (field == "cases") r.cohort.cases = require_count(value, field);
      else if (field == "patients") r.cohort.patients = require_count(value, field);
    } else if (section == "geometric") {
      const auto key = std::pair{require_enum<StructureId>(row[4], parse_structure, "structure"),
                                 require_enum<Instant>(row[3], parse_instant, "instant")};
      auto [it, inserted] = geometric.try_emplace(key);
      if (inserted) {
        geometric_order.push_back(key);
        it->second.structure = key.first;
        it->second.instant = key.second;
      }
      auto& g = it->second;
      if (field == "scored") g.scored = require_count(value, field);
      else if (field == "failed") g.failed = require_count(value, field);
      else {
        const auto underscore = field.rfind('_');
        const std::string metric = field.substr(0, underscore);
        const std::string stat = underscore == std::string::npos ? "" : field.substr(underscore + 1);
        MeanStd* target = metric == "dice" ? &g.dice : metric == "dm" ? &g.d_m : metric == "dh" ? &g.d_H : nullptr;
        if (!target) throw FormatError("unknown geometric field '" + field + "'", field);
        if (stat == "n") target->n = require_count(value, field);
        else if (stat == "mean") target->mean = require_double(value, field);
        else if (stat == "std") target->std = require_double(value, field);
        else throw FormatError("unknown geometric field '" + field + "'", field);
      }
    } else if (section == "clinical") {
      const auto index = require_enum<ClinicalIndex>(row[4], parse_clinical_index, "index");
      auto [it, inserted] = clinical.try_emplace(index);
      if (inserted) {
        clinical_order.push_back(index);
        it->second.index = index;
      }
      auto& s = it->second.stats;
      if (field == "n") s.n = require_count(value, field);
      else if (field == "corr") {
        if (!value.empty()) s.corr = require_double(value, field);
      } else if (field == "bias") s.bias = require_double(value, field);
      else if (field == "std") s.std = require_double(value, field);
      else if (field == "mae") s.mae = require_double(value, field);
      else if (field == "loa_low") s.loa_low = require_double(value, field);
      else if (field == "loa_high") s.loa_high = require_double(value, field);
      else throw FormatError("unknown clinical field '" + field + "'", field);
    } else if (section == "outliers") {
      if (field == "classified") r.outliers.classified = require_count(value, field);
    } else if (section == "outlier_case") {
      r.outliers.flagged.push_back({row[1], require_enum<View>(row[2], parse_view, "view"),
                                    require_enum<Instant>(row[3], parse_instant, "instant")});
    } else if (section == "case") {
      const CaseKey key{row[1], require_enum<View>(row[2], parse_view, "view"),
                        require_enum<Instant>(row[3], parse_instant, "instant")};
      const auto structure = require_enum<StructureId>(row[4], parse_structure, "structure");
      auto [it, inserted] = case_index.try_emplace(std::tuple{key, structure}, r.cases.size());
      if (inserted) {
        CaseScore c;
        c.patient_id = key.patient_id;
        c.view = key.view;
        c.instant = key.instant;
        c.structure = structure;
        r.cases.push_back(std::move(c));
      }
      auto& c = r.cases[it->second];
      if (field == "status") c.status = require_enum<CaseStatus>(value, parse_case_status, field);
      else if (field == "dice") c.scores.dice = require_double(value, field);
      else if (field == "dm") c.scores.d_m = require_double(value, field);
      else if (field == "dh") c.scores.d_H = require_double(value, field);
      else if (field == "reason") c.reason = value;
      else throw FormatError("unknown case field '" + field + "'", field);
    } else if (section == "patient") {
      auto [it, inserted] = patient_index.try_emplace(row[1], r.patients.size());
      if (inserted) {
        r.patients.emplace_back();
        r.patients.back().patient_id = row[1];
      }
      auto& p = r.patients[it->second];
      if (field == "status") p.ok = value == "ok";
      else if (field == "reason") p.reason = value;
      else if (field == "edv_pred") p.pred.edv = require_double(value, field);
      else if (field == "esv_pred") p.pred.esv = require_double(value, field);
      else if (field == "ef_pred") p.pred.ef = require_double(value, field);
      else if (field == "edv_ref") p.ref.edv = require_double(value, field);
      else if (field == "esv_ref") p.ref.esv = require_double(value, field);
      else if (field == "ef_ref") p.ref.ef = require_double(value, field);
      else throw FormatError("unknown patient field '" + field + "'", field);
    } else {
      throw FormatError("unknown report CSV section '" + section + "'", "section");
    }
  }
  for (const auto& k : geometric_order) r.geometric.push_back(geometric.at(k));
  for (const auto& k : clinical_order) r.clinical.push_back(clinical.at(k));
  return r;
}

// ---------------------------------------------------------------- Markdown

std::string fixed(double v, int digits) {
  if (!std::isfinite(v)) return "n/a";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, v);
  return buffer;
}

std::string mean_pm_std(const MeanStd& m, int digits) {
  if (m.n == 0) return "n/a";
  return fixed(m.mean, digits) + " ± " + fixed(m.std, digits);
}

template <class T>
std::string list_or_all(const std::vector<T>& values) {
  if (values.empty()) return "all";
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ", ";
    if constexpr (std::is_same_v<T, int>) {
      out += std::to_string(v);
    } else {
      out += to_string(v);
    }
  }
  return out;
}

std::string render_markdown(const MethodReport& r) {
  std::string out;
  out += "# Segmentation benchmark report: " + r.meta.method + "\n\n";
  out += "- Engine: " + std::string(kEngineName) + " " + r.meta.engine_version + "\n";
  out += "- Axis construction: " + r.meta.axis_construction + " (" + std::to_string(r.meta.discs) + " discs)\n";
  out += "- Prediction post-processing: " + std::string(r.meta.postprocess ? "largest component + hole filling" : "none") + "\n";
  const auto& rule = r.meta.outlier_rule;
  out += "- Outlier rule (" + std::string(to_string(r.meta.outlier_mode)) + "): d_m > " + format_double(rule.dm_max_ed) +
         "/" + format_double(rule.dm_max_es) + " mm, d_H > " + format_double(rule.dh_max_ed) + "/" +
         format_double(rule.dh_max_es) + " mm (ED/ES)\n";
  out += "- Cohort: quality " + list_or_all(r.cohort.qualities) + "; folds " + list_or_all(r.cohort.folds) +
         "; views " + list_or_all(r.cohort.views) + "; instants " + list_or_all(r.cohort.instants) + "\n";
  out += "- Cases: " + std::to_string(r.cohort.cases) + " images from " + std::to_string(r.cohort.patients) +
         " patients\n\n";

  if (r.cohort.cases == 0) {
    out += "No cases matched the cohort filters (0 cases); no scores to report.\n";
    return out;
  }

  out += "## Segmentation accuracy (mean ± std)\n\n";
  std::string header = "| Method |";
  std::string rule_row = "|---|";
  std::string values = "| " + r.meta.method + " |";
  for (const auto& g : r.geometric) {
    const std::string prefix = std::string(to_string(g.structure)) + " " + std::string(to_string(g.instant));
    header += " " + prefix + " D | " + prefix + " d_m (mm) | " + prefix + " d_H (mm) |";
    rule_row += "---|---|---|";
    values += " " + mean_pm_std(g.dice, 3) + " | " + mean_pm_std(g.d_m, 2) + " | " + mean_pm_std(g.d_H, 2) + " |";
  }
  out += header + "\n" + rule_row + "\n" + values + "\n\n";

  out += "| Structure | Instant | Scored | Not scored |\n|---|---|---|---|\n";
  for (const auto& g : r.geometric) {
    out += "| " + std::string(to_string(g.structure)) + " | " + std::string(to_string(g.instant)) + " | " +
           std::to_string(g.scored) + " | " + std::to_string(g.failed) + " |\n";
  }
  out += "\n";

  out += "## Clinical indices\n\n";
  header = "| Method |";
  rule_row = "|---|";
  values = "| " + r.meta.method + " |";
  for (const auto& c : r.clinical) {
    const std::string name(to_string(c.index));
    const std::string unit = c.index == ClinicalIndex::kEF ? "%" : "ml";
    header += " " + name + " corr | " + name + " bias ± σ (" + unit + ") | " + name + " mae (" + unit + ") |";
    rule_row += "---|---|---|";
    if (c.stats.n == 0) {
      values += " n/a | n/a | n/a |";
    } else {
      values += " " + (c.stats.corr ? fixed(*c.stats.corr, 3) : std::string("n/a")) + " | " + fixed(c.stats.bias, 1) +
                " ± " + fixed(c.stats.std, 1) + " | " + fixed(c.stats.mae, 1) + " |";
    }
  }
  out += header + "\n" + rule_row + "\n" + values + "\n\n";
  std::size_t clinical_ok = 0;
  for (const auto& p : r.patients) clinical_ok += p.ok ? 1 : 0;
  out += "Clinical indices from " + std::to_string(clinical_ok) + " of " + std::to_string(r.patients.size()) +
         " patients with four LV_endo contours.\n\n";

  out += "## Outliers\n\n";
  out += std::to_string(r.outliers.flagged.size()) + " of " + std::to_string(r.outliers.classified) +
         " images outside the inter-observer limits (" + fixed(100.0 * r.outliers.rate(), 1) + " %).\n";
  for (const auto& k : r.outliers.flagged) out += "- " + to_string(k) + "\n";
  out += "\n";

  std::string failures;
  for (const auto& c : r.cases) {
    if (!c.scored()) {
      failures += "- " + to_string(c.key()) + " " + std::string(to_string(c.structure)) + ": " +
                  std::string(to_string(c.status)) + (c.reason.empty() ? "" : " (" + c.reason + ")") + "\n";
    }
  }
  for (const auto& p : r.patients) {
    if (!p.ok) failures += "- " + p.patient_id + " clinical: " + p.reason + "\n";
  }
  out += "## Failures\n\n" + (failures.empty() ? std::string("None.\n") : failures);
  return out;
}

}  // namespace

std::string_view to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::kOk: return "ok";
    case CaseStatus::kMissingPrediction: return "missing_prediction";
    case CaseStatus::kFailed: return "failed";
    case CaseStatus::kMissingReference: return "missing_reference";
  }
  return "?";
}

std::optional<CaseStatus> parse_case_status(std::string_view token) {
  static constexpr CaseStatus kAll[] = {CaseStatus::kOk, CaseStatus::kMissingPrediction, CaseStatus::kFailed,
                                        CaseStatus::kMissingReference};
  return lookup(token, kAll);
}

std::string_view to_string(ClinicalIndex i) {
  switch (i) {
    case ClinicalIndex::kEDV: return "EDV";
    case ClinicalIndex::kESV: return "ESV";
    case ClinicalIndex::kEF: return "EF";
  }
  return "?";
}

std::optional<ReportFormat> parse_report_format(std::string_view token) {
  const auto t = to_lower(trim(token));
  if (t == "json") return ReportFormat::kJson;
  if (t == "csv") return ReportFormat::kCsv;
  if (t == "markdown" || t == "md") return ReportFormat::kMarkdown;
  return std::nullopt;
}

std::string render_report(const MethodReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson: return to_json(report).dump(2) + "\n";
    case ReportFormat::kCsv: return render_csv(report);
    case ReportFormat::kMarkdown: return render_markdown(report);
  }
  return {};
}

MethodReport parse_report(std::string_view text, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson:
      try {
        return from_json(Json::parse(text));
      } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("invalid report JSON: ") + e.what());
      }
    case ReportFormat::kCsv: return parse_csv_report(text);
    case ReportFormat::kMarkdown: break;
  }
  throw FormatError("markdown reports cannot be parsed");
}

std::string render_cases_csv(std::span<const CaseScore> cases) {
  std::string out = "patient_id,view,instant,structure,status,dice,dm,dh,reason\n";
  for (const auto& c : cases) {
    out += csv_escape(c.patient_id) + "," + std::string(to_string(c.view)) + "," + std::string(to_string(c.instant)) +
           "," + std::string(to_string(c.structure)) + "," + std::string(to_string(c.status)) + "," +
           format_double(c.scores.dice) + "," + format_double(c.scores.d_m) + "," + format_double(c.scores.d_H) + "," +
           csv_escape(c.reason) + "\n";
  }
  return out;
}

std::vector<CaseScore> parse_cases_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  const std::vector<std::string> header{"patient_id", "view", "instant", "structure", "status", "dice", "dm", "dh", "reason"};
  if (rows.empty() || rows[0] != header) {
    throw FormatError("cases CSV header must be 'patient_id,view,instant,structure,status,dice,dm,dh,reason'");
  }
  std::vector<CaseScore> cases;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != header.size()) {
      throw FormatError("cases CSV line " + std::to_string(i + 1) + " must have " + std::to_string(header.size()) +
                        " fields");
    }
    CaseScore c;
    c.patient_id = row[0];
    c.view = require_enum<View>(row[1], parse_view, "view");
    c.instant = require_enum<Instant>(row[2], parse_instant, "instant");
    c.structure = require_enum<StructureId>(row[3], parse_structure, "structure");
    c.status = require_enum<CaseStatus>(row[4], parse_case_status, "status");
    c.scores.dice = require_double(row[5], "dice");
    c.scores.d_m = require_double(row[6], "dm");
    c.scores.d_H = require_double(row[7], "dh");
    c.reason = row[8];
    cases.push_back(std::move(c));
  }
  return cases;
}

}  // namespace camus

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

#include <cmath>
#include <random>

#include "camus/error.hpp"
#include "camus/harness.hpp"
#include "camus/report.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace camus;

namespace {

MethodReport awkward_report() {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  MethodReport r;
  r.meta.method = "unet, \"v2\"";
  r.meta.postprocess = false;
  r.meta.outlier_mode = OutlierMode::kAll;
  r.meta.outlier_rule.dm_max_es = 4.25;
  r.meta.discs = 30;
  r.cohort = {{Quality::kGood, Quality::kMedium}, {2, 5}, {View::k4CH}, {}, 3, 2};
  for (int p = 0; p < 2; ++p) {
    for (StructureId s : kAllStructures) {
      CaseScore c;
      c.patient_id = "patient000" + std::to_string(p);
      c.view = View::k4CH;
      c.instant = p ? Instant::kES : Instant::kED;
      c.structure = s;
      c.scores = {u(rng) / 10.0, u(rng), u(rng) + 10.0};
      r.cases.push_back(c);
    }
  }
  r.cases[1].status = CaseStatus::kFailed;
  r.cases[1].scores = {0.0, INFINITY, INFINITY};
  r.cases[1].reason = "prediction has fewer than 3 pixels, see \"log\"";
  r.cases[2].status = CaseStatus::kMissingPrediction;
  r.cases[2].scores = {};
  r.cases[2].reason = "no prediction file";
  r.cases[3].scores.dice = 0.1 + 0.2;
  r.cases[3].scores.d_m = 1e-300;
  r.geometric = aggregate_geometric(r.cases);
  r.patients.push_back({"patient0000", true, "", {120.5, 60.25, 50.0}, {118.0, 59.0, 0.1 + 0.2}});
  r.patients.push_back({"patient0001", false, "missing 2CH ES", {}, {}});
  r.clinical = aggregate_clinical(r.patients);
  r.outliers.classified = 2;
  r.outliers.flagged.push_back({"patient0001", View::k4CH, Instant::kES});
  return r;
}

}  // namespace

TEST_CASE("rendering is deterministic") {
  const MethodReport r = awkward_report();
  for (ReportFormat f : {ReportFormat::kJson, ReportFormat::kCsv, ReportFormat::kMarkdown}) {
    CHECK(render_report(r, f) == render_report(r, f));
    CHECK(render_report(r, f) == render_report(awkward_report(), f));
  }
}

TEST_CASE("JSON and CSV round-trip every field") {
  const MethodReport r = awkward_report();
  const std::string json = render_report(r, ReportFormat::kJson);
  const MethodReport from_json = parse_report(json, ReportFormat::kJson);
  CHECK(from_json == r);
  const std::string csv = render_report(from_json, ReportFormat::kCsv);
  const MethodReport from_csv = parse_report(csv, ReportFormat::kCsv);
  CHECK(from_csv == r);
  CHECK(render_report(from_csv, ReportFormat::kJson) == json);
  CHECK(from_csv.cases[3].scores.dice == 0.1 + 0.2);
  CHECK(from_csv.cases[3].scores.d_m == 1e-300);
  CHECK(std::isinf(from_csv.cases[1].scores.d_H));
  CHECK(from_csv.cases[1].reason == r.cases[1].reason);
}

TEST_CASE("JSON layout") {
  const auto j = nlohmann::json::parse(render_report(awkward_report(), ReportFormat::kJson));
  CHECK(j.at("engine").at("version") == std::string(kEngineVersion));
  CHECK(j.at("engine").at("axis_construction") == std::string(kAxisConstruction));
  CHECK(j.at("options").at("postprocess") == false);
  CHECK(j.at("options").at("outlier_mode") == "all");
  CHECK(j.at("outliers").at("rate") == 0.5);
  CHECK(j.at("failures").size() == 3);
  CHECK(j.at("cases").at(1).at("dm").is_null());
}

TEST_CASE("markdown mirrors the results tables") {
  const std::string md = render_report(awkward_report(), ReportFormat::kMarkdown);
  for (const char* needle : {"LV_endo", "LV_epi", "LA", "EDV", "ESV", "EF", "corr", "mae", "d_m", "d_H", "## Failures"}) {
    CHECK(md.find(needle) != std::string::npos);
  }
}

TEST_CASE("empty cohort renders a zero-count notice") {
  MethodReport empty;
  empty.geometric = aggregate_geometric({});
  empty.clinical = aggregate_clinical({});
  const std::string md = render_report(empty, ReportFormat::kMarkdown);
  CHECK(md.find("0 cases") != std::string::npos);
  const std::string json = render_report(empty, ReportFormat::kJson);
  CHECK(nlohmann::json::parse(json).is_object());
  CHECK(parse_report(json, ReportFormat::kJson) == empty);
  CHECK(parse_report(render_report(empty, ReportFormat::kCsv), ReportFormat::kCsv) == empty);
}

TEST_CASE("cases CSV round-trip") {
  const MethodReport r = awkward_report();
  const std::string csv = render_cases_csv(r.cases);
  CHECK(csv.rfind("patient_id,view,instant,structure,status,dice,dm,dh,reason\n", 0) == 0);
  CHECK(parse_cases_csv(csv) == r.cases);
  CHECK_THROWS_AS(parse_cases_csv("patient_id,view\n"), FormatError);
  CHECK_THROWS_AS(parse_cases_csv("patient_id,view,instant,structure,status,dice,dm,dh,reason\n"
                                  "p1,2CH,ED,LV_endo,ok,abc,1,2,\n"),
                  FormatError);
}

TEST_CASE("malformed reports are format errors") {
  CHECK_THROWS_AS(parse_report("{", ReportFormat::kJson), FormatError);
  CHECK_THROWS_AS(parse_report("{}", ReportFormat::kJson), FormatError);
  CHECK_THROWS_AS(parse_report("section,patient_id\n", ReportFormat::kCsv), FormatError);
  CHECK_THROWS_AS(parse_report("anything", ReportFormat::kMarkdown), Error);
}

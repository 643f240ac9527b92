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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "camus/clinical.hpp"
#include "camus/geometry.hpp"
#include "camus/manifest.hpp"
#include "camus/metrics.hpp"
#include "camus/outliers.hpp"
#include "camus/stats.hpp"

namespace camus {

inline constexpr std::string_view kEngineName = "camus-bench";
inline constexpr std::string_view kEngineVersion = "1.0.0";

enum class CaseStatus {
  kOk,
  kMissingPrediction,  // no prediction file
  kFailed,             // prediction unreadable, empty or too small to trace
  kMissingReference,   // reference has no pixels of this structure
};
std::string_view to_string(CaseStatus s);
std::optional<CaseStatus> parse_case_status(std::string_view token);

/// Score of one structure in one image.
struct CaseScore {
  std::string patient_id;
  View view = View::k2CH;
  Instant instant = Instant::kED;
  StructureId structure = StructureId::kLvEndo;
  CaseStatus status = CaseStatus::kOk;
  GeometricScores scores;
  std::string reason;

  CaseKey key() const { return {patient_id, view, instant}; }
  /// Counted in the aggregates.
  bool scored() const noexcept { return status == CaseStatus::kOk; }
  bool operator==(const CaseScore&) const = default;
};

struct PatientClinical {
  std::string patient_id;
  bool ok = false;
  std::string reason;
  ClinicalScores pred;
  ClinicalScores ref;

  bool operator==(const PatientClinical&) const = default;
};

struct GeometricAggregate {
  StructureId structure = StructureId::kLvEndo;
  Instant instant = Instant::kED;
  std::size_t scored = 0;
  std::size_t failed = 0;  // cases of this group not scored, any reason
  MeanStd dice;
  MeanStd d_m;
  MeanStd d_H;

  bool operator==(const GeometricAggregate&) const = default;
};

enum class ClinicalIndex { kEDV, kESV, kEF };
inline constexpr ClinicalIndex kAllClinicalIndices[] = {ClinicalIndex::kEDV, ClinicalIndex::kESV, ClinicalIndex::kEF};
std::string_view to_string(ClinicalIndex i);

struct ClinicalAggregate {
  ClinicalIndex index = ClinicalIndex::kEDV;
  AgreementStats stats;  // n == 0 when no patient could be evaluated

  bool operator==(const ClinicalAggregate&) const = default;
};

struct OutlierSummary {
  std::size_t classified = 0;
  std::vector<CaseKey> flagged;

  double rate() const noexcept {
    return classified == 0 ? 0.0 : static_cast<double>(flagged.size()) / static_cast<double>(classified);
  }
  bool operator==(const OutlierSummary&) const = default;
};

/// Filters that produced the cohort. Empty lists mean "no restriction".
struct CohortDescriptor {
  std::vector<Quality> qualities;
  std::vector<int> folds;
  std::vector<View> views;
  std::vector<Instant> instants;
  std::size_t cases = 0;
  std::size_t patients = 0;

  bool operator==(const CohortDescriptor&) const = default;
};

struct ReportMetadata {
  std::string engine_version{kEngineVersion};
  std::string axis_construction{kAxisConstruction};
  std::string method = "submission";
  bool postprocess = true;
  OutlierRule outlier_rule;
  OutlierMode outlier_mode = OutlierMode::kAny;
  std::size_t discs = 20;

  bool operator==(const ReportMetadata&) const = default;
};

/// Result of scoring one method on one cohort.
struct MethodReport {
  ReportMetadata meta;
  CohortDescriptor cohort;
  std::vector<GeometricAggregate> geometric;  // structure-major, ED before ES
  std::vector<ClinicalAggregate> clinical;    // EDV, ESV, EF
  OutlierSummary outliers;
  std::vector<CaseScore> cases;               // sorted by (patient, view, instant, structure)
  std::vector<PatientClinical> patients;      // sorted by patient id

  bool operator==(const MethodReport&) const = default;
};

enum class ReportFormat { kJson, kCsv, kMarkdown };
std::optional<ReportFormat> parse_report_format(std::string_view token);

/// Deterministic rendering: equal reports give identical bytes.
std::string render_report(const MethodReport& report, ReportFormat format);

/// Inverse of render_report for JSON and CSV. Throws FormatError.
MethodReport parse_report(std::string_view text, ReportFormat format);

/// Per-case table used by `compare`:
/// `patient_id,view,instant,structure,status,dice,dm,dh,reason`.
std::string render_cases_csv(std::span<const CaseScore> cases);
std::vector<CaseScore> parse_cases_csv(std::string_view text);

}  // namespace camus

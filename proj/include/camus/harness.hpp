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

#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "camus/clinical.hpp"
#include "camus/manifest.hpp"
#include "camus/outliers.hpp"
#include "camus/report.hpp"
#include "camus/stats.hpp"

namespace camus {

/// Cohort restriction. Empty lists select everything.
struct CohortFilter {
  std::vector<Quality> qualities;
  std::vector<int> folds;
  std::vector<View> views;
  std::vector<Instant> instants;

  /// Cases without a fold never match a non-empty fold list.
  bool matches(const PatientCase& c) const;
};

struct EvaluationOptions {
  std::string method_name = "submission";
  bool postprocess = true;
  OutlierRule outlier_rule;
  OutlierMode outlier_mode = OutlierMode::kAny;
  AxisOptions axis;
  /// Worker threads for per-case scoring; results are aggregated in sorted
  /// case order, so the report does not depend on this value.
  std::size_t workers = 1;
};

/// `<dir>/<patient_id>_<view>_<instant>.mhd`, e.g. `patient0001_2CH_ED.mhd`.
std::filesystem::path case_file(const std::filesystem::path& dir, const CaseKey& key);

/// Scores every manifest case accepted by `filter`.
///
/// Each case's mask is scored for LV_endo, LV_epi and LA. An image is an
/// outlier when its LV_endo or LV_epi score breaks the outlier rule; failed
/// predictions count as outliers. Clinical indices are computed per patient
/// whose four LV_endo images (2CH/4CH x ED/ES) are all in the cohort.
///
/// Throws MissingReferenceError when a reference file is absent; missing or
/// unusable predictions are recorded as failures in the report.
MethodReport evaluate_submission(const std::filesystem::path& pred_dir, const std::filesystem::path& ref_dir,
                                 std::span<const PatientCase> manifest, const CohortFilter& filter,
                                 const EvaluationOptions& options = {});

/// Mean/std aggregates over the case list; exposed for report checks.
std::vector<GeometricAggregate> aggregate_geometric(std::span<const CaseScore> cases);
std::vector<ClinicalAggregate> aggregate_clinical(std::span<const PatientClinical> patients);

enum class CompareMetric { kDice, kDm, kDh };
std::string_view to_string(CompareMetric m);
std::optional<CompareMetric> parse_compare_metric(std::string_view token);

/// Which matched pairs enter the test. Unset fields pool over that axis.
struct ComparisonSelection {
  CompareMetric metric = CompareMetric::kDm;
  std::optional<StructureId> structure;
  std::optional<View> view;
  std::optional<Instant> instant;
};

/// Wilcoxon signed-rank test of method `a` vs `b` on pairs matched by
/// (patient, view, instant, structure). Unscored cases carry infinite
/// distances (worst possible). Throws MismatchError listing unmatched keys.
WilcoxonResult compare_methods(std::span<const CaseScore> a, std::span<const CaseScore> b,
                               const ComparisonSelection& selection);

}  // namespace camus

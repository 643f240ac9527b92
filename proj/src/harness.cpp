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

#include "camus/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <map>
#include <set>
#include <thread>

#include "camus/error.hpp"
#include "camus/geometry.hpp"
#include "camus/metrics.hpp"
#include "camus/mhd_io.hpp"
#include "camus/number_format.hpp"

namespace camus {
namespace {

template <class T>
bool selected(const std::vector<T>& allowed, const T& value) {
  return allowed.empty() || std::find(allowed.begin(), allowed.end(), value) != allowed.end();
}

template <class T>
std::vector<T> sorted_unique(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

// Everything computed for one image, independent of every other image.
struct CaseWork {
  CaseKey key;
  std::array<CaseScore, 3> scores;
  std::optional<Contour> pred_endo;
  std::optional<Contour> ref_endo;
  std::string pred_endo_reason;
  std::string ref_endo_reason;
};

std::optional<Contour> outline(const LabelMask& mask, bool postprocessed_input, std::string& reason) {
  BinaryMask region = region_of(mask, StructureId::kLvEndo);
  if (!postprocessed_input) region = keep_largest_fill_holes(region);
  try {
    return trace_contour(region, mask.spacing());
  } catch (const Error& e) {
    reason = e.what();
    return std::nullopt;
  }
}

CaseWork score_one(const std::filesystem::path& pred_dir, const std::filesystem::path& ref_dir, const CaseKey& key,
                   const EvaluationOptions& options) {
  CaseWork work;
  work.key = key;
  for (std::size_t s = 0; s < 3; ++s) {
    auto& c = work.scores[s];
    c.patient_id = key.patient_id;
    c.view = key.view;
    c.instant = key.instant;
    c.structure = kAllStructures[s];
  }

  const auto ref_path = case_file(ref_dir, key);
  if (!std::filesystem::exists(ref_path)) {
    throw MissingReferenceError("missing reference mask " + ref_path.string());
  }
  const LabelMask ref = read_mask(ref_path, {.strict_labels = true});

  std::optional<LabelMask> pred;
  std::string pred_problem;
  CaseStatus pred_status = CaseStatus::kOk;
  const auto pred_path = case_file(pred_dir, key);
  if (!std::filesystem::exists(pred_path)) {
    pred_status = CaseStatus::kMissingPrediction;
    pred_problem = "no prediction file " + pred_path.filename().string();
  } else {
    try {
      pred = read_mask(pred_path, {.strict_labels = true});
      if (pred->width() != ref.width() || pred->height() != ref.height() || pred->spacing() != ref.spacing()) {
        throw ShapeError("prediction grid differs from reference grid");
      }
    } catch (const Error& e) {
      pred.reset();
      pred_status = CaseStatus::kFailed;
      pred_problem = e.what();
    }
  }

  const ScoreOptions score_options{.postprocess = options.postprocess};
  for (auto& c : work.scores) {
    if (region_of(ref, c.structure).empty()) {
      c.status = CaseStatus::kMissingReference;
      c.reason = "reference has no " + std::string(to_string(c.structure)) + " pixels";
      continue;
    }
    if (!pred) {
      c.status = pred_status;
      c.reason = pred_problem;
      continue;
    }
    try {
      c.scores = score_case(*pred, ref, c.structure, score_options);
      if (c.scores.failed()) {
        c.status = CaseStatus::kFailed;
        c.reason = "prediction has fewer than 3 " + std::string(to_string(c.structure)) + " pixels";
      }
    } catch (const Error& e) {
      c.status = CaseStatus::kFailed;
      c.reason = e.what();
    }
  }

  work.ref_endo = outline(ref, false, work.ref_endo_reason);
  if (pred) {
    BinaryMask region = region_of(*pred, StructureId::kLvEndo);
    region = keep_largest_fill_holes(region);  // same outline rule as scoring, post-processed or not
    try {
      work.pred_endo = trace_contour(region, pred->spacing());
    } catch (const Error& e) {
      work.pred_endo_reason = e.what();
    }
  } else {
    work.pred_endo_reason = pred_problem;
  }
  return work;
}

std::vector<CaseWork> score_all(const std::filesystem::path& pred_dir, const std::filesystem::path& ref_dir,
                                const std::vector<CaseKey>& keys, const EvaluationOptions& options) {
  std::vector<std::optional<CaseWork>> results(keys.size());
  std::vector<std::exception_ptr> errors(keys.size());
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t i = next++; i < keys.size(); i = next++) {
      try {
        results[i] = score_one(pred_dir, ref_dir, keys[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(keys.size(), 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::vector<CaseWork> out;
  out.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);  // first failure in sorted order
    out.push_back(std::move(*results[i]));
  }
  return out;
}

PatientClinical clinical_for(const std::string& patient_id, const std::map<CaseKey, const CaseWork*>& by_key,
                             const AxisOptions& axis) {
  PatientClinical p;
  p.patient_id = patient_id;

  std::map<std::pair<View, Instant>, std::pair<const Contour*, const Contour*>> contours;  // (pred, ref)
  for (View v : kAllViews) {
    for (Instant i : kAllInstants) {
      const CaseWork& w = *by_key.at(CaseKey{patient_id, v, i});
      const std::string tag = std::string(to_string(v)) + " " + std::string(to_string(i));
      if (!w.ref_endo) {
        p.reason = "reference LV_endo contour unavailable (" + tag + "): " + w.ref_endo_reason;
        return p;
      }
      if (!w.pred_endo) {
        p.reason = "prediction LV_endo contour unavailable (" + tag + "): " + w.pred_endo_reason;
        return p;
      }
      contours[{v, i}] = {&*w.pred_endo, &*w.ref_endo};
    }
  }

  try {
    const auto volume = [&](Instant i, bool use_pred) {
      const auto& c2 = contours.at({View::k2CH, i});
      const auto& c4 = contours.at({View::k4CH, i});
      return simpson_biplane(long_axis(use_pred ? *c2.first : *c2.second, axis),
                             long_axis(use_pred ? *c4.first : *c4.second, axis));
    };
    p.ref.edv = volume(Instant::kED, false);
    p.ref.esv = volume(Instant::kES, false);
    p.ref.ef = ejection_fraction(p.ref.edv, p.ref.esv);
    p.pred.edv = volume(Instant::kED, true);
    p.pred.esv = volume(Instant::kES, true);
    p.pred.ef = ejection_fraction(p.pred.edv, p.pred.esv);
    p.ok = true;
  } catch (const Error& e) {
    p = PatientClinical{};
    p.patient_id = patient_id;
    p.reason = e.what();
  }
  return p;
}

}  // namespace

bool CohortFilter::matches(const PatientCase& c) const {
  if (!selected(qualities, c.quality) || !selected(views, c.view) || !selected(instants, c.instant)) return false;
  if (folds.empty()) return true;
  return c.fold && std::find(folds.begin(), folds.end(), *c.fold) != folds.end();
}

std::filesystem::path case_file(const std::filesystem::path& dir, const CaseKey& key) {
  return dir / (to_string(key) + ".mhd");
}

std::vector<GeometricAggregate> aggregate_geometric(std::span<const CaseScore> cases) {
  std::vector<GeometricAggregate> out;
  for (StructureId s : kAllStructures) {
    for (Instant i : kAllInstants) {
      GeometricAggregate g;
      g.structure = s;
      g.instant = i;
      std::vector<double> dice_values, dm_values, dh_values;
      for (const auto& c : cases) {
        if (c.structure != s || c.instant != i) continue;
        if (!c.scored()) {
          ++g.failed;
          continue;
        }
        ++g.scored;
        dice_values.push_back(c.scores.dice);
        dm_values.push_back(c.scores.d_m);
        dh_values.push_back(c.scores.d_H);
      }
      g.dice = mean_std(dice_values);
      g.d_m = mean_std(dm_values);
      g.d_H = mean_std(dh_values);
      out.push_back(g);
    }
  }
  return out;
}

std::vector<ClinicalAggregate> aggregate_clinical(std::span<const PatientClinical> patients) {
  std::vector<ClinicalAggregate> out;
  for (ClinicalIndex index : kAllClinicalIndices) {
    std::vector<double> pred, ref;
    for (const auto& p : patients) {
      if (!p.ok) continue;
      const auto pick = [index](const ClinicalScores& c) {
        return index == ClinicalIndex::kEDV ? c.edv : index == ClinicalIndex::kESV ? c.esv : c.ef;
      };
      pred.push_back(pick(p.pred));
      ref.push_back(pick(p.ref));
    }
    ClinicalAggregate a;
    a.index = index;
    if (!pred.empty()) a.stats = agreement(pred, ref);
    out.push_back(a);
  }
  return out;
}

MethodReport evaluate_submission(const std::filesystem::path& pred_dir, const std::filesystem::path& ref_dir,
                                 std::span<const PatientCase> manifest, const CohortFilter& filter,
                                 const EvaluationOptions& options) {
  options.outlier_rule.validate();

  std::vector<CaseKey> keys;
  for (const auto& c : manifest) {
    if (filter.matches(c)) keys.push_back(key_of(c));
  }
  std::sort(keys.begin(), keys.end());

  MethodReport report;
  report.meta.method = options.method_name;
  report.meta.postprocess = options.postprocess;
  report.meta.outlier_rule = options.outlier_rule;
  report.meta.outlier_mode = options.outlier_mode;
  report.meta.discs = options.axis.discs;
  report.cohort.qualities = sorted_unique(filter.qualities);
  report.cohort.folds = sorted_unique(filter.folds);
  report.cohort.views = sorted_unique(filter.views);
  report.cohort.instants = sorted_unique(filter.instants);
  report.cohort.cases = keys.size();

  const auto work = score_all(pred_dir, ref_dir, keys, options);

  std::map<CaseKey, const CaseWork*> by_key;
  std::set<std::string> patients;
  for (const auto& w : work) {
    by_key.emplace(w.key, &w);
    patients.insert(w.key.patient_id);
    for (const auto& c : w.scores) report.cases.push_back(c);

    const auto& endo = w.scores[0];
    const auto& epi = w.scores[1];
    if (endo.status == CaseStatus::kMissingReference || epi.status == CaseStatus::kMissingReference) continue;
    ++report.outliers.classified;
    if (classify_outlier(endo.scores, w.key.instant, options.outlier_rule, options.outlier_mode) ||
        classify_outlier(epi.scores, w.key.instant, options.outlier_rule, options.outlier_mode)) {
      report.outliers.flagged.push_back(w.key);
    }
  }
  report.cohort.patients = patients.size();

  for (const auto& id : patients) {
    bool complete = true;
    for (View v : kAllViews) {
      for (Instant i : kAllInstants) complete = complete && by_key.contains(CaseKey{id, v, i});
    }
    if (complete) report.patients.push_back(clinical_for(id, by_key, options.axis));
  }

  report.geometric = aggregate_geometric(report.cases);
  report.clinical = aggregate_clinical(report.patients);
  return report;
}

std::string_view to_string(CompareMetric m) {
  switch (m) {
    case CompareMetric::kDice: return "dice";
    case CompareMetric::kDm: return "dm";
    case CompareMetric::kDh: return "dh";
  }
  return "?";
}

std::optional<CompareMetric> parse_compare_metric(std::string_view token) {
  const auto t = to_lower(trim(token));
  if (t == "dice" || t == "d") return CompareMetric::kDice;
  if (t == "dm" || t == "d_m") return CompareMetric::kDm;
  if (t == "dh" || t == "d_h") return CompareMetric::kDh;
  return std::nullopt;
}

WilcoxonResult compare_methods(std::span<const CaseScore> a, std::span<const CaseScore> b,
                               const ComparisonSelection& selection) {
  using Key = std::tuple<CaseKey, StructureId>;
  const auto index = [](std::span<const CaseScore> cases, std::string_view side) {
    std::map<Key, const CaseScore*> out;
    for (const auto& c : cases) {
      if (!out.emplace(Key{c.key(), c.structure}, &c).second) {
        throw MismatchError("duplicate case " + to_string(c.key()) + "/" + std::string(to_string(c.structure)) +
                            " in " + std::string(side));
      }
    }
    return out;
  };
  const auto ia = index(a, "a");
  const auto ib = index(b, "b");

  std::vector<std::string> unmatched;
  const auto describe = [](const Key& k) {
    return to_string(std::get<0>(k)) + "/" + std::string(to_string(std::get<1>(k)));
  };
  for (const auto& [k, _] : ia) {
    if (!ib.contains(k)) unmatched.push_back(describe(k) + " (only in a)");
  }
  for (const auto& [k, _] : ib) {
    if (!ia.contains(k)) unmatched.push_back(describe(k) + " (only in b)");
  }
  if (!unmatched.empty()) {
    std::string message = std::to_string(unmatched.size()) + " unmatched case key(s): ";
    const std::size_t shown = std::min<std::size_t>(unmatched.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) message += (i ? ", " : "") + unmatched[i];
    if (shown < unmatched.size()) message += ", ...";
    throw MismatchError(message);
  }

  const auto value = [&](const CaseScore& c) {
    switch (selection.metric) {
      case CompareMetric::kDice: return c.scores.dice;
      case CompareMetric::kDm: return c.scores.d_m;
      case CompareMetric::kDh: return c.scores.d_H;
    }
    return 0.0;
  };

  std::vector<double> xa, xb;
  for (const auto& [k, ca] : ia) {
    const auto& key = std::get<0>(k);
    if (selection.structure && std::get<1>(k) != *selection.structure) continue;
    if (selection.view && key.view != *selection.view) continue;
    if (selection.instant && key.instant != *selection.instant) continue;
    xa.push_back(value(*ca));
    xb.push_back(value(*ib.at(k)));
  }
  return wilcoxon_signed_rank(xa, xb);
}

}  // namespace camus

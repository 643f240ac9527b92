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

// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "camus/clinical.hpp"
#include "camus/folds.hpp"
#include "camus/harness.hpp"
#include "camus/metrics.hpp"
#include "camus/mhd_io.hpp"
#include "camus/stats.hpp"
#include "support/manifests.hpp"
#include "support/oracles.hpp"
#include "support/phantom.hpp"

using namespace camus;

namespace {

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void metric_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> dim(3, 16);
  int pairs = 0;
  double worst_dm = 0.0, worst_dh = 0.0;
  bool dice_exact = true;
  while (pairs < 250) {
    const int w = dim(rng), h = dim(rng);
    const Spacing s{0.3, 0.15};
    LabelMask pred(w, h, s), ref(w, h, s);
    const BinaryMask a = oracle::random_blob(rng, w, h), b = oracle::random_blob(rng, w, h);
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        pred(c, r) = a(c, r) ? kLvCavity : kBackground;
        ref(c, r) = b(c, r) ? kLvCavity : kBackground;
      }
    }
    const BinaryMask p = oracle::keep_largest_fill_holes(a);
    const BinaryMask q = oracle::keep_largest_fill_holes(b);
    if (p.count() < 3 || q.count() < 3) continue;
    const GeometricScores g = score_case(pred, ref, StructureId::kLvEndo);
    std::size_t both = 0;
    for (std::size_t i = 0; i < p.size(); ++i) both += p.bits()[i] && b.bits()[i];
    dice_exact = dice_exact && g.dice == 2.0 * both / static_cast<double>(p.count() + b.count());
    const auto expected =
        oracle::distances(oracle::points_of(trace_contour(p, s)), oracle::points_of(trace_contour(q, s)));
    worst_dm = std::max(worst_dm, std::abs(g.d_m - expected.mean));
    worst_dh = std::max(worst_dh, std::abs(g.d_H - expected.hausdorff));
    ++pairs;
  }
  const double elapsed = seconds_since(t0);
  report(dice_exact && worst_dm <= 1e-9 && worst_dh <= 1e-9 && elapsed < 10.0, "metric oracle equivalence",
         std::to_string(pairs) + " random pairs <= 16x16, max |d_m - oracle| = " + num(worst_dm) +
             " mm, max |d_H - oracle| = " + num(worst_dh) + " mm (tol 1e-9), Dice exact = " +
             (dice_exact ? "yes" : "no") + ", " + num(elapsed) + " s (< 10 s)");
}

void concentric_circles() {
  const Contour inner(oracle::circle(20.0, 10000));
  const Contour outer(oracle::circle(23.0, 10000, {}, 0.37));
  const double dm = mean_absolute_distance(inner, outer);
  const double dh = hausdorff(inner, outer);
  report(std::abs(dm - 3.0) <= 0.01 && std::abs(dh - 3.0) <= 0.01, "concentric-circle calibration",
         "r = 20/23 mm, 10^4 samples each: |d_m - 3| = " + num(std::abs(dm - 3.0)) + " mm, |d_H - 3| = " +
             num(std::abs(dh - 3.0)) + " mm (<= 0.01)");
}

void simpson_calibration() {
  const auto volume = [](const Contour& c, std::size_t discs) {
    return simpson_biplane(BiplaneCase{c, c, Instant::kED}, {.discs = discs});
  };
  const Contour ellipse(oracle::ellipse(40.0, 25.0, 4096));
  const Contour circle(oracle::circle(30.0, 4096));
  const double spheroid = 4.0 / 3.0 * std::numbers::pi * 40.0 * 25.0 * 25.0 / 1000.0;
  const double sphere = std::numbers::pi / 6.0 * 60.0 * 60.0 * 60.0 / 1000.0;
  const double e20 = std::abs(volume(ellipse, 20) - spheroid) / spheroid;
  const double e1e5 = std::abs(volume(ellipse, 100000) - spheroid) / spheroid;
  const double s20 = std::abs(volume(circle, 20) - sphere) / sphere;
  const double s1e5 = std::abs(volume(circle, 100000) - sphere) / sphere;
  const double ef = ejection_fraction(120.0, 60.0);
  report(e20 <= 0.01 && e1e5 <= 1e-4 && s20 <= 0.01 && s1e5 <= 1e-4 && ef == 50.0, "Simpson calibration",
         "spheroid " + num(spheroid) + " ml: rel err N=20 " + num(e20) + " (<= 1%), N=1e5 " + num(e1e5) +
             " (<= 0.01%); sphere " + num(sphere) + " ml: N=20 " + num(s20) + ", N=1e5 " + num(s1e5) +
             "; EF(120, 60) = " + num(ef) + "%");
}

void wilcoxon_exactness() {
  std::mt19937_64 rng(103);
  std::uniform_int_distribution<int> size(1, 12), coarse(-5, 5);
  std::uniform_real_distribution<double> fine(-2.0, 2.0);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = static_cast<std::size_t>(size(rng));
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = t % 2 ? coarse(rng) : fine(rng);
      y[i] = t % 2 ? coarse(rng) : fine(rng);
    }
    const auto got = wilcoxon_signed_rank(x, y);
    const auto want = oracle::signed_rank_enumeration(x, y);
    if (got.p_value != want.p_value || got.w_plus != want.w_plus || got.n_effective != want.n) ++mismatches;
  }
  const std::vector<double> d{1, 2, 3, 4, 5}, zero(5, 0.0);
  const double p5 = wilcoxon_signed_rank(d, zero).p_value;
  report(mismatches == 0 && p5 == 0.0625, "Wilcoxon exactness",
         "1000 random samples n <= 12: " + std::to_string(mismatches) + " mismatches vs 2^n enumeration; " +
             "{1,2,3,4,5} -> p = " + num(p5) + " (0.0625)");
}

void postprocessing() {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  int oracle_mismatch = 0, not_idempotent = 0;
  for (int t = 0; t < 1000; ++t) {
    const BinaryMask m = t % 2 ? oracle::random_mask(rng, 64, 64, density(rng)) : oracle::random_blob(rng, 64, 64);
    const BinaryMask out = keep_largest_fill_holes(m);
    if (!(out == oracle::keep_largest_fill_holes(m))) ++oracle_mismatch;
    if (!(keep_largest_fill_holes(out) == out)) ++not_idempotent;
  }
  report(oracle_mismatch == 0 && not_idempotent == 0, "post-processing idempotence and flood-fill oracle",
         "1000 random 64x64 masks: " + std::to_string(oracle_mismatch) + " oracle mismatches, " +
             std::to_string(not_idempotent) + " non-idempotent");
}

void harness_determinism() {
  const auto dir = phantom::scratch_dir("acceptance-harness");
  const auto cases = phantom::write_cohort(dir / "ref", 8, 109);
  const MethodReport one = evaluate_submission(dir / "ref", dir / "ref", cases, {}, {.workers = 1});
  const MethodReport eight = evaluate_submission(dir / "ref", dir / "ref", cases, {}, {.workers = 8});
  bool perfect = !one.cases.empty();
  for (const auto& c : one.cases) {
    perfect = perfect && c.scored() && c.scores.dice == 1.0 && c.scores.d_m == 0.0 && c.scores.d_H == 0.0;
  }
  bool identical = true;
  for (ReportFormat f : {ReportFormat::kJson, ReportFormat::kCsv, ReportFormat::kMarkdown}) {
    identical = identical && render_report(one, f) == render_report(eight, f);
  }
  const double rate = one.outliers.rate();

  // Thresholds fire strictly above 3.5/4.0 (d_m) and 8.2/8.8 (d_H).
  bool thresholds = true;
  for (Instant i : kAllInstants) {
    const double dm = i == Instant::kED ? 3.5 : 4.0;
    const double dh = i == Instant::kED ? 8.2 : 8.8;
    thresholds = thresholds && !classify_outlier({0.9, dm, 1.0}, i) && !classify_outlier({0.9, 1.0, dh}, i) &&
                 classify_outlier({0.9, std::nextafter(dm, 100.0), 1.0}, i) &&
                 classify_outlier({0.9, 1.0, std::nextafter(dh, 100.0)}, i) && !classify_outlier({0.9, dm, dh}, i);
  }
  report(perfect && identical && rate == 0.0 && thresholds, "harness determinism and outlier thresholds",
         std::to_string(one.cases.size()) + " self-scored cases all Dice 1 / d 0 = " + (perfect ? "yes" : "no") +
             ", outlier rate " + num(100.0 * rate) + "%, 1 vs 8 workers byte-identical = " +
             (identical ? "yes" : "no") + ", thresholds strict at 3.5/4.0 and 8.2/8.8 mm = " +
             (thresholds ? "yes" : "no"));
}

void fold_stratification() {
  const auto cases = manifests::dataset_mix();
  const FoldAssignment f = make_folds(cases, 10, 0);
  const FoldComposition c = fold_composition(cases, f);
  double quality_dev = 0.0, ef_dev = 0.0;
  bool sizes = true;
  for (std::size_t k = 0; k < c.patients.size(); ++k) {
    sizes = sizes && c.patients[k] == 50;
    for (int i = 0; i < 3; ++i) {
      quality_dev = std::max(quality_dev, std::abs(100.0 * c.quality[k][i] / c.patients[k] -
                                                   100.0 * c.total_quality[i] / c.total_patients));
      ef_dev = std::max(ef_dev, std::abs(100.0 * c.ef_group[k][i] / c.patients[k] -
                                         100.0 * c.total_ef_group[i] / c.total_patients));
    }
  }
  // Shares are multiples of 2 points at 50 patients per fold; allow for
  // rounding in the subtraction only.
  const double tol = 2.0 + 1e-9;
  report(sizes && quality_dev <= tol && ef_dev <= tol, "fold stratification",
         "500 patients, 10 folds of 50 = " + std::string(sizes ? "yes" : "no") +
             ", max quality share deviation " + num(quality_dev) + " points, max EF share deviation " +
             num(ef_dev) + " points (<= 2)");
}

void file_round_trip() {
  const auto dir = phantom::scratch_dir("acceptance-io");
  std::mt19937_64 rng(113);
  std::uniform_int_distribution<int> dim(1, 64), label(0, 3);
  std::uniform_real_distribution<double> sp(0.05, 2.0);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const int w = dim(rng), h = dim(rng);
    std::vector<std::uint8_t> v(static_cast<std::size_t>(w) * h);
    for (auto& x : v) x = static_cast<std::uint8_t>(label(rng));
    const LabelMask m(w, h, {sp(rng), sp(rng)}, v);
    write_mask(m, dir / "m.mhd");
    const LabelMask back = read_mask(dir / "m.mhd", {.strict_labels = true});
    std::ifstream raw(dir / "m.raw", std::ios::binary);
    const std::string bytes((std::istreambuf_iterator<char>(raw)), std::istreambuf_iterator<char>());
    if (!(back == m) || bytes != std::string(v.begin(), v.end())) ++mismatches;
  }
  report(mismatches == 0, "file format round-trip",
         "1000 random masks write -> read: " + std::to_string(mismatches) + " mismatches");
}

}  // namespace

int main() {
  metric_oracle();
  concentric_circles();
  simpson_calibration();
  wilcoxon_exactness();
  postprocessing();
  harness_determinism();
  fold_stratification();
  file_round_trip();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

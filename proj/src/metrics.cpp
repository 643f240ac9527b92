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

#include "camus/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "camus/error.hpp"

namespace camus {

double dice(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw ShapeError("dice: mask sizes differ (" + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                     " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()) + ")");
  }
  const auto ba = a.bits();
  const auto bb = b.bits();
  std::size_t size_a = 0, size_b = 0, both = 0;
  for (std::size_t i = 0; i < ba.size(); ++i) {
    size_a += ba[i];
    size_b += bb[i];
    both += ba[i] & bb[i];
  }
  if (size_a + size_b == 0) return 1.0;
  return 2.0 * static_cast<double>(both) / static_cast<double>(size_a + size_b);
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

namespace {

double squared_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  const double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  const Point2 d = p - (a + t * ab);
  return dot(d, d);
}

struct Directed {
  double sum = 0.0;
  double max = 0.0;
};

Directed directed(const Contour& from, const Contour& to) {
  Directed out;
  for (const auto& p : from.points()) {
    const double d = point_contour_distance(p, to);
    out.sum += d;
    out.max = std::max(out.max, d);
  }
  return out;
}

}  // namespace

double point_contour_distance(Point2 p, const Contour& c) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    const auto [a, b] = c.edge(i);
    best = std::min(best, squared_segment_distance(p, a, b));
  }
  return std::sqrt(best);
}

double directed_avg_distance(const Contour& from, const Contour& to) {
  return directed(from, to).sum / static_cast<double>(from.size());
}

double directed_max_distance(const Contour& from, const Contour& to) { return directed(from, to).max; }

double mean_absolute_distance(const Contour& a, const Contour& b) {
  return 0.5 * (directed_avg_distance(a, b) + directed_avg_distance(b, a));
}

double hausdorff(const Contour& a, const Contour& b) {
  return std::max(directed_max_distance(a, b), directed_max_distance(b, a));
}

GeometricScores score_case(const LabelMask& pred, const LabelMask& ref, StructureId structure,
                           const ScoreOptions& options) {
  if (pred.width() != ref.width() || pred.height() != ref.height()) {
    throw ShapeError("prediction is " + std::to_string(pred.width()) + "x" + std::to_string(pred.height()) +
                     ", reference is " + std::to_string(ref.width()) + "x" + std::to_string(ref.height()));
  }
  if (pred.spacing() != ref.spacing()) throw ShapeError("prediction and reference spacing differ");

  const BinaryMask ref_region = region_of(ref, structure);
  if (ref_region.empty()) {
    throw MissingReferenceError("reference has no " + std::string(to_string(structure)) + " pixels");
  }
  BinaryMask pred_region = region_of(pred, structure);
  if (options.postprocess) pred_region = keep_largest_fill_holes(pred_region);

  GeometricScores scores;
  scores.dice = dice(pred_region, ref_region);

  const BinaryMask ref_outline = keep_largest_fill_holes(ref_region);
  const Contour ref_contour = trace_contour(ref_outline, ref.spacing());

  // Raw predictions may hold several components; the contour follows the
  // largest one either way.
  const BinaryMask pred_outline = options.postprocess ? pred_region : keep_largest_fill_holes(pred_region);
  if (pred_outline.count() < 3) return scores;
  const Contour pred_contour = trace_contour(pred_outline, pred.spacing());

  const Directed forward = directed(pred_contour, ref_contour);
  const Directed backward = directed(ref_contour, pred_contour);
  scores.d_m = 0.5 * (forward.sum / static_cast<double>(pred_contour.size()) +
                      backward.sum / static_cast<double>(ref_contour.size()));
  scores.d_H = std::max(forward.max, backward.max);
  return scores;
}

}  // namespace camus

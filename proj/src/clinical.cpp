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

#include "camus/clinical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "camus/error.hpp"
#include "camus/metrics.hpp"

namespace camus {
namespace {

// Indices of the vertices kept by Douglas-Peucker on the closed polygon,
// in contour order.
std::vector<std::size_t> simplify_closed(std::span<const Point2> pts, double tolerance) {
  const std::size_t n = pts.size();
  std::size_t far = 0;
  double far_d = -1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = distance(pts[0], pts[i]);
    if (d > far_d) {
      far_d = d;
      far = i;
    }
  }

  std::vector<std::uint8_t> keep(n, 0);
  keep[0] = keep[far] = 1;
  // Ranges are (first, last) with last possibly == n meaning vertex 0.
  std::vector<std::pair<std::size_t, std::size_t>> ranges{{0, far}, {far, n}};
  while (!ranges.empty()) {
    const auto [lo, hi] = ranges.back();
    ranges.pop_back();
    if (hi <= lo + 1) continue;
    const Point2 a = pts[lo];
    const Point2 b = pts[hi % n];
    double worst = -1.0;
    std::size_t worst_i = lo;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double d = point_segment_distance(pts[i], a, b);
      if (d > worst) {
        worst = d;
        worst_i = i;
      }
    }
    if (worst > tolerance) {
      keep[worst_i] = 1;
      ranges.emplace_back(lo, worst_i);
      ranges.emplace_back(worst_i, hi);
    }
  }

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) kept.push_back(i);
  }
  return kept;
}

// Sum of in-region spans along each level line, from the sorted crossings.
double span_length(std::vector<double>& hits) {
  std::sort(hits.begin(), hits.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < hits.size(); i += 2) total += hits[i + 1] - hits[i];
  return total;
}

}  // namespace

LongAxis long_axis(const Contour& contour, const AxisOptions& options) {
  if (!contour.closed()) throw DegenerateError("long axis needs a closed contour");
  if (options.discs == 0) throw DomainError("disc count must be positive");
  const auto pts = contour.points();
  const std::size_t n = pts.size();

  double max_edge = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_edge = std::max(max_edge, distance(pts[i], pts[(i + 1) % n]));

  std::size_t di = 0;
  double diameter = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(pts[i], pts[j]);
      if (d > diameter) {
        diameter = d;
        di = i;
      }
    }
  }
  if (!(diameter > 0.0)) throw DegenerateError("contour has zero extent");

  const double tolerance = options.straightness_tolerance > 0.0 ? options.straightness_tolerance : max_edge;
  const auto kept = simplify_closed(pts, tolerance);
  double base_len = -1.0;
  Point2 base_a, base_b;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const Point2 a = pts[kept[k]];
    const Point2 b = pts[kept[(k + 1) % kept.size()]];
    const double len = distance(a, b);
    if (len > base_len) {
      base_len = len;
      base_a = a;
      base_b = b;
    }
  }

  LongAxis axis;
  if (base_len >= options.min_base_fraction * diameter) {
    axis.base_mid = 0.5 * (base_a + base_b);
  } else {
    axis.base_mid = pts[di];
    axis.diameter_fallback = true;
  }

  double apex_d = -1.0;
  for (const auto& p : pts) {
    const double d = distance(p, axis.base_mid);
    if (d > apex_d) {
      apex_d = d;
      axis.apex = p;
    }
  }
  axis.length = apex_d;
  if (!(axis.length > 0.0)) throw DegenerateError("long axis has zero length");

  const Point2 dir = (1.0 / axis.length) * (axis.apex - axis.base_mid);
  const Point2 across{-dir.z, dir.x};
  const std::size_t discs = options.discs;
  const auto level_of = [&](std::size_t i) {
    return (static_cast<double>(i) + 0.5) / static_cast<double>(discs) * axis.length;
  };
  std::vector<double> along(n);
  for (std::size_t i = 0; i < n; ++i) along[i] = dot(pts[i] - axis.base_mid, dir);

  // Each edge only visits the levels its projection can reach.
  std::vector<std::vector<double>> hits(discs);
  const double per_level = static_cast<double>(discs) / axis.length;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double lo = std::min(along[i], along[j]) * per_level - 0.5;
    const double hi = std::max(along[i], along[j]) * per_level - 0.5;
    if (hi < -1.0 || lo > static_cast<double>(discs)) continue;
    const auto first = static_cast<std::size_t>(std::max(0.0, std::floor(lo) - 1.0));
    const auto last = std::min(discs - 1, static_cast<std::size_t>(std::max(0.0, std::ceil(hi) + 1.0)));
    for (std::size_t k = first; k <= last; ++k) {
      const double level = level_of(k);
      const double sp = along[i] - level;
      const double sq = along[j] - level;
      if ((sp > 0.0) == (sq > 0.0)) continue;
      const double t = sp / (sp - sq);
      hits[k].push_back(dot(pts[i] + t * (pts[j] - pts[i]) - axis.base_mid, across));
    }
  }
  axis.diameters.resize(discs);
  for (std::size_t k = 0; k < discs; ++k) {
    if (hits[k].size() != 2) ++axis.irregular_levels;
    axis.diameters[k] = span_length(hits[k]);
  }
  return axis;
}

double simpson_biplane(const LongAxis& axis_2ch, const LongAxis& axis_4ch) {
  if (axis_2ch.diameters.size() != axis_4ch.diameters.size() || axis_2ch.diameters.empty()) {
    throw MismatchError("both views need the same positive number of discs");
  }
  if (!(axis_2ch.length > 0.0) || !(axis_4ch.length > 0.0)) throw DegenerateError("degenerate long axis");
  const std::size_t discs = axis_2ch.diameters.size();
  const double length = std::max(axis_2ch.length, axis_4ch.length);
  double sum = 0.0;
  for (std::size_t i = 0; i < discs; ++i) sum += axis_4ch.diameters[i] * axis_2ch.diameters[i];
  const double volume_mm3 = std::numbers::pi / 4.0 * sum * (length / static_cast<double>(discs));
  return volume_mm3 / 1000.0;
}

double simpson_biplane(const BiplaneCase& c, const AxisOptions& options) {
  return simpson_biplane(long_axis(c.contour_2ch, options), long_axis(c.contour_4ch, options));
}

double ejection_fraction(double edv, double esv) {
  if (!(edv > 0.0)) throw DomainError("ejection fraction needs a positive EDV");
  return 100.0 * (edv - esv) / edv;
}

}  // namespace camus

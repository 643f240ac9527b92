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

#include <cstddef>
#include <string_view>
#include <vector>

#include "camus/geometry.hpp"
#include "camus/manifest.hpp"

namespace camus {

/// Identifies the axis/base construction below; reports carry it so scores
/// are only compared within one construction.
inline constexpr std::string_view kAxisConstruction = "dp-longest-edge-base/diameter-fallback/midpoint-discs v1";

/// Tuning of the long-axis extraction.
struct AxisOptions {
  std::size_t discs = 20;
  /// Douglas-Peucker tolerance (mm) used to find straight runs of the
  /// contour. 0 selects the longest edge of the input contour, i.e. about
  /// one pixel diagonal on traced masks.
  double straightness_tolerance = 0.0;
  /// The longest straight run is taken as the closing base segment only if
  /// it spans at least this fraction of the contour's diameter; otherwise
  /// the axis falls back to the diameter itself (smooth closed shapes).
  double min_base_fraction = 0.2;
};

/// Long axis of an LV endocardial contour and the disc diameters along it.
///
/// `base_mid` is the midpoint of the contour's closing (mitral) segment and
/// `apex` the contour vertex farthest from it. `diameters[i]` is the total
/// chord length of the contour on the line perpendicular to the axis at
/// distance (i + 0.5) / N * length from the base.
struct LongAxis {
  Point2 base_mid;
  Point2 apex;
  double length = 0.0;
  std::vector<double> diameters;
  /// True when the base fell back to the contour diameter.
  bool diameter_fallback = false;
  /// Levels crossed by no edge (diameter 0) or by more than two edges
  /// (non-star-shaped contour; spans summed).
  std::size_t irregular_levels = 0;

  bool irregular() const noexcept { return irregular_levels > 0; }
};

/// Throws DegenerateError when the contour is open or has zero length.
LongAxis long_axis(const Contour& contour, const AxisOptions& options = {});

/// Both apical views of the LV endocardium at one instant.
struct BiplaneCase {
  Contour contour_2ch;
  Contour contour_4ch;
  Instant instant = Instant::kED;
};

/// Method-of-discs volume in ml: (pi/4) * sum a_i * b_i * L / N with a from
/// the 4CH view, b from the 2CH view and L the longer of the two axes.
double simpson_biplane(const BiplaneCase& c, const AxisOptions& options = {});
double simpson_biplane(const LongAxis& axis_2ch, const LongAxis& axis_4ch);

/// 100 * (edv - esv) / edv. Throws DomainError when edv <= 0.
double ejection_fraction(double edv, double esv);

/// Volumes in ml, EF in percent.
struct ClinicalScores {
  double edv = 0.0;
  double esv = 0.0;
  double ef = 0.0;

  bool operator==(const ClinicalScores&) const = default;
};

}  // namespace camus

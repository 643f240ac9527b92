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

#include <limits>

#include "camus/geometry.hpp"
#include "camus/label_mask.hpp"

namespace camus {

/// Dice, mean absolute distance (mm) and Hausdorff distance (mm) of one
/// predicted structure against its reference. Distances are +infinity when
/// no prediction contour could be extracted; such scores are "failed".
struct GeometricScores {
  double dice = 0.0;
  double d_m = std::numeric_limits<double>::infinity();
  double d_H = std::numeric_limits<double>::infinity();

  bool failed() const noexcept { return !(d_m < std::numeric_limits<double>::infinity()); }
  bool operator==(const GeometricScores&) const = default;
};

/// 2|a ∩ b| / (|a| + |b|); 1.0 when both are empty. Throws ShapeError on a
/// dimension mismatch.
double dice(const BinaryMask& a, const BinaryMask& b);

/// Euclidean distance from `p` to the segment [a, b].
double point_segment_distance(Point2 p, Point2 a, Point2 b);

/// Distance from `p` to the nearest point of the polyline `c` (closed
/// contours include the last-to-first edge).
double point_contour_distance(Point2 p, const Contour& c);

/// Mean over the vertices of `from` of the distance to the polyline `to`.
double directed_avg_distance(const Contour& from, const Contour& to);
/// Maximum over the vertices of `from` of the distance to the polyline `to`.
double directed_max_distance(const Contour& from, const Contour& to);

/// Average of the two directed means.
double mean_absolute_distance(const Contour& a, const Contour& b);
double hausdorff(const Contour& a, const Contour& b);

struct ScoreOptions {
  /// Keep the largest component and fill holes of the prediction before
  /// scoring. References are never altered for Dice.
  bool postprocess = true;
};

/// Scores one structure of `pred` against `ref`.
///
/// Dice uses the (optionally post-processed) prediction region and the raw
/// reference region. Distances use traced outer contours; the reference
/// contour is traced on its largest hole-free component. A prediction whose
/// region is empty or too small to trace yields failed distances.
///
/// Throws ShapeError when dimensions or spacing differ and
/// MissingReferenceError when the reference region is empty.
GeometricScores score_case(const LabelMask& pred, const LabelMask& ref, StructureId structure,
                           const ScoreOptions& options = {});

}  // namespace camus

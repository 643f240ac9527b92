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
#include <span>
#include <string_view>
#include <vector>

#include "camus/label_mask.hpp"

namespace camus {

/// Scored structures. LV_epi is the region enclosed by the epicardial
/// contour, i.e. cavity and myocardium together.
enum class StructureId { kLvEndo, kLvEpi, kLa };

inline constexpr StructureId kAllStructures[] = {StructureId::kLvEndo, StructureId::kLvEpi, StructureId::kLa};

std::string_view to_string(StructureId s);
/// Accepts `LV_endo`, `lv_endo`, `endo`, `LV_epi`, `epi`, `LA`.
std::optional<StructureId> parse_structure(std::string_view token);

/// Position in millimetres: x lateral, z axial.
struct Point2 {
  double x = 0.0;
  double z = 0.0;

  bool operator==(const Point2&) const = default;
};

inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.z - b.z}; }
inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.z + b.z}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.z}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.z * b.z; }
inline double cross(Point2 a, Point2 b) { return a.x * b.z - a.z * b.x; }
double distance(Point2 a, Point2 b);

/// Ordered polyline, at least 3 points, no two consecutive points equal.
/// A closed contour has an implicit edge from the last point to the first.
class Contour {
 public:
  /// Throws DegenerateError when the invariants do not hold.
  explicit Contour(std::vector<Point2> points, bool closed = true);

  std::span<const Point2> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool closed() const noexcept { return closed_; }
  const Point2& operator[](std::size_t i) const { return points_[i]; }

  /// Number of edges: size() when closed, size() - 1 otherwise.
  std::size_t edge_count() const noexcept { return closed_ ? points_.size() : points_.size() - 1; }
  std::pair<Point2, Point2> edge(std::size_t i) const {
    return {points_[i], points_[(i + 1) % points_.size()]};
  }

  /// Shoelace area in the (x, z) plane; positive for counter-clockwise.
  double signed_area() const noexcept;

  bool operator==(const Contour&) const = default;

 private:
  std::vector<Point2> points_;
  bool closed_ = true;
};

/// Pixels whose label belongs to the structure: LV_endo {1}, LV_epi {1,2},
/// LA {3}.
BinaryMask region_of(const LabelMask& mask, StructureId structure);

/// Keeps the largest 4-connected foreground component and fills every
/// background region (8-connected) that does not reach the image border.
/// Equal-size components: the one whose first pixel in row-major order comes
/// first wins.
BinaryMask keep_largest_fill_holes(const BinaryMask& region);

/// Outer boundary of a single 4-connected component by Moore-neighbour
/// tracing with Jacob's stopping criterion. Points are pixel centres scaled
/// by `spacing`, start at the first foreground pixel in row-major order and
/// run counter-clockwise in (x, z).
///
/// Throws DegenerateError for regions with fewer than 3 pixels and
/// ValidationError when the foreground is not a single 4-connected component.
Contour trace_contour(const BinaryMask& region, Spacing spacing);

}  // namespace camus

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

#include <cstdint>
#include <optional>
#include <vector>

#include "camus/label_mask.hpp"

namespace camus {

/// Beam-major B-mode data: `values[beam * n_samples + sample]`. Beam `i`
/// points at angle_min + i * (angle_max - angle_min) / (n_beams - 1),
/// measured from the axial (z) direction towards +x; sample `j` lies at depth
/// start_depth + j * sample_spacing from the probe apex.
struct PolarImage {
  int n_beams = 0;
  int n_samples = 0;
  double angle_min = 0.0;  // radians
  double angle_max = 0.0;  // radians
  double sample_spacing = 0.0;  // mm
  double start_depth = 0.0;  // mm
  double wavelength = 0.6;  // mm; output spacing is (wavelength/2, wavelength/4)
  std::vector<double> values;

  double at(int beam, int sample) const {
    return values[static_cast<std::size_t>(beam) * n_samples + sample];
  }
  double angle_step() const { return (angle_max - angle_min) / (n_beams - 1); }
  double max_depth() const { return start_depth + (n_samples - 1) * sample_spacing; }

  /// Throws ValidationError if any structural invariant is violated.
  void validate() const;
};

enum class Interpolation { kBilinear, kNearest };

/// Placement of the Cartesian output: pixel (col, row) has its centre at
/// (x_origin + col * spacing.x, z_origin + row * spacing.z) in probe
/// coordinates. Origins are multiples of the spacing, so the probe apex
/// falls on a pixel centre.
struct CartesianGrid {
  Spacing spacing{};
  double x_origin = 0.0;
  double z_origin = 0.0;
  int width = 0;
  int height = 0;

  double x(int col) const { return x_origin + col * spacing.x; }
  double z(int row) const { return z_origin + row * spacing.z; }
};

struct ScanConvertedImage {
  CartesianGrid grid;
  std::vector<double> values;  // row-major; 0 outside the sector
  std::vector<std::uint8_t> in_sector;
};

/// Bounding box of the imaging sector on the (lambda/2, lambda/4) grid.
CartesianGrid sector_grid(const PolarImage& polar);

/// Interpolated polar value at probe coordinates (x, z); nullopt outside
/// the sector.
std::optional<double> sample_sector(const PolarImage& polar, double x, double z, Interpolation mode);

ScanConvertedImage scan_convert_values(const PolarImage& polar,
                                       Interpolation mode = Interpolation::kBilinear);

/// Scan-converted image rounded and clamped to 0..255. Use kNearest when the
/// polar grid carries labels.
LabelMask scan_convert(const PolarImage& polar, Interpolation mode = Interpolation::kBilinear);

}  // namespace camus

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

#include "camus/scan_conversion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "camus/error.hpp"

namespace camus {
namespace {

constexpr double kEdgeTolerance = 1e-12;

}  // namespace

void PolarImage::validate() const {
  if (n_beams < 2) throw ValidationError("polar image needs at least 2 beams");
  if (n_samples < 2) throw ValidationError("polar image needs at least 2 samples per beam");
  if (!(angle_max > angle_min)) throw ValidationError("polar image needs angle_max > angle_min");
  if (angle_min < -std::numbers::pi / 2 || angle_max > std::numbers::pi / 2) {
    throw ValidationError("polar sector must lie within [-pi/2, pi/2]");
  }
  if (!(sample_spacing > 0.0)) throw ValidationError("polar sample spacing must be positive");
  if (start_depth < 0.0) throw ValidationError("polar start depth must be non-negative");
  if (!(wavelength > 0.0)) throw ValidationError("wavelength must be positive");
  if (values.size() != static_cast<std::size_t>(n_beams) * static_cast<std::size_t>(n_samples)) {
    throw ValidationError("polar payload size does not match n_beams * n_samples");
  }
}

CartesianGrid sector_grid(const PolarImage& polar) {
  polar.validate();
  const Spacing spacing{polar.wavelength / 2.0, polar.wavelength / 4.0};
  const double r_min = polar.start_depth;
  const double r_max = polar.max_depth();

  std::vector<double> angles{polar.angle_min, polar.angle_max};
  if (polar.angle_min < 0.0 && polar.angle_max > 0.0) angles.push_back(0.0);

  double x_lo = INFINITY, x_hi = -INFINITY, z_lo = INFINITY, z_hi = -INFINITY;
  for (double r : {r_min, r_max}) {
    for (double a : angles) {
      const double x = r * std::sin(a);
      const double z = r * std::cos(a);
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      z_lo = std::min(z_lo, z);
      z_hi = std::max(z_hi, z);
    }
  }

  const auto lo_index = [](double v, double step) { return static_cast<long>(std::floor(v / step + 1e-9)); };
  const auto hi_index = [](double v, double step) { return static_cast<long>(std::ceil(v / step - 1e-9)); };

  const long col_lo = lo_index(x_lo, spacing.x);
  const long col_hi = hi_index(x_hi, spacing.x);
  const long row_lo = lo_index(z_lo, spacing.z);
  const long row_hi = hi_index(z_hi, spacing.z);

  CartesianGrid grid;
  grid.spacing = spacing;
  grid.x_origin = static_cast<double>(col_lo) * spacing.x;
  grid.z_origin = static_cast<double>(row_lo) * spacing.z;
  grid.width = static_cast<int>(col_hi - col_lo + 1);
  grid.height = static_cast<int>(row_hi - row_lo + 1);
  return grid;
}

std::optional<double> sample_sector(const PolarImage& polar, double x, double z, Interpolation mode) {
  const double r = std::hypot(x, z);
  const double theta = std::atan2(x, z);
  const double r_max = polar.max_depth();
  if (r < polar.start_depth - kEdgeTolerance || r > r_max + kEdgeTolerance) return std::nullopt;
  if (theta < polar.angle_min - kEdgeTolerance || theta > polar.angle_max + kEdgeTolerance) return std::nullopt;

  const double u = std::clamp((theta - polar.angle_min) / polar.angle_step(), 0.0,
                              static_cast<double>(polar.n_beams - 1));
  const double v = std::clamp((r - polar.start_depth) / polar.sample_spacing, 0.0,
                              static_cast<double>(polar.n_samples - 1));

  if (mode == Interpolation::kNearest) {
    return polar.at(static_cast<int>(std::lround(u)), static_cast<int>(std::lround(v)));
  }

  const int i0 = std::min(static_cast<int>(u), polar.n_beams - 2);
  const int j0 = std::min(static_cast<int>(v), polar.n_samples - 2);
  const double fu = u - i0;
  const double fv = v - j0;
  return (1.0 - fu) * (1.0 - fv) * polar.at(i0, j0) + fu * (1.0 - fv) * polar.at(i0 + 1, j0) +
          (1.0 - fu) * fv * polar.at(i0, j0 + 1) + fu * fv * polar.at(i0 + 1, j0 + 1);
}

ScanConvertedImage scan_convert_values(const PolarImage& polar, Interpolation mode) {
  ScanConvertedImage out;
  out.grid = sector_grid(polar);
  const std::size_t n = static_cast<std::size_t>(out.grid.width) * out.grid.height;
  out.values.assign(n, 0.0);
  out.in_sector.assign(n, 0);

  for (int row = 0; row < out.grid.height; ++row) {
    const double z = out.grid.z(row);
    for (int col = 0; col < out.grid.width; ++col) {
      if (const auto value = sample_sector(polar, out.grid.x(col), z, mode)) {
        const std::size_t idx = static_cast<std::size_t>(row) * out.grid.width + col;
        out.values[idx] = *value;
        out.in_sector[idx] = 1;
      }
    }
  }
  return out;
}

LabelMask scan_convert(const PolarImage& polar, Interpolation mode) {
  const auto converted = scan_convert_values(polar, mode);
  std::vector<std::uint8_t> pixels(converted.values.size());
  std::transform(converted.values.begin(), converted.values.end(), pixels.begin(), [](double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
  });
  return LabelMask(converted.grid.width, converted.grid.height, converted.grid.spacing, std::move(pixels));
}

}  // namespace camus

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

// Synthetic apical-view phantoms: a truncated-ellipse LV cavity, a myocardial
// band around it and a round atrium below the base.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "camus/harness.hpp"
#include "camus/label_mask.hpp"
#include "camus/manifest.hpp"
#include "camus/mhd_io.hpp"

namespace camus::phantom {

struct Shape {
  double half_width = 12.0;  // cavity, mm
  double length = 40.0;      // apex to base, mm
  double wall = 3.0;
  double la_radius = 9.0;
};

inline constexpr double kFieldWidth = 48.0;   // mm
inline constexpr double kFieldHeight = 80.0;  // mm
inline constexpr double kApexDepth = 6.0;     // mm
inline constexpr double kTruncation = 0.3;    // base line below the ellipse centre, in semi-axes

inline LabelMask render(const Shape& s, Spacing spacing = {0.3, 0.15}) {
  const int width = static_cast<int>(std::lround(kFieldWidth / spacing.x));
  const int height = static_cast<int>(std::lround(kFieldHeight / spacing.z));
  LabelMask m(width, height, spacing);
  const double semi_z = s.length / (1.0 + kTruncation);
  const double cx = kFieldWidth / 2.0;
  const double cz = kApexDepth + semi_z;
  const double base_z = cz + kTruncation * semi_z;
  const double la_cz = base_z + s.wall + s.la_radius;
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      const double x = col * spacing.x - cx;
      const double z = row * spacing.z;
      const double u = x / s.half_width, v = (z - cz) / semi_z;
      const double uo = x / (s.half_width + s.wall), vo = (z - cz) / (semi_z + s.wall);
      if (z <= base_z && u * u + v * v <= 1.0) {
        m(col, row) = kLvCavity;
      } else if (z <= base_z + s.wall && uo * uo + vo * vo <= 1.0) {
        m(col, row) = kMyocardium;
      } else if (x * x + (z - la_cz) * (z - la_cz) <= s.la_radius * s.la_radius) {
        m(col, row) = kLeftAtrium;
      }
    }
  }
  return m;
}

/// Grows every label-1 region by `pixels` 4-neighbour steps over any label.
inline LabelMask dilate_cavity(const LabelMask& in, int pixels) {
  LabelMask m = in;
  for (int step = 0; step < pixels; ++step) {
    const LabelMask prev = m;
    for (int r = 0; r < m.height(); ++r) {
      for (int c = 0; c < m.width(); ++c) {
        if (prev(c, r) == kLvCavity) continue;
        const bool touch = (c > 0 && prev(c - 1, r) == kLvCavity) || (c + 1 < m.width() && prev(c + 1, r) == kLvCavity) ||
                           (r > 0 && prev(c, r - 1) == kLvCavity) || (r + 1 < m.height() && prev(c, r + 1) == kLvCavity);
        if (touch) m(c, r) = kLvCavity;
      }
    }
  }
  return m;
}

inline Quality quality_for(int index) {
  const int bucket = index % 100;
  return bucket < 35 ? Quality::kGood : bucket < 81 ? Quality::kMedium : Quality::kPoor;
}

inline EfGroup ef_for(int index) {
  const int bucket = (index * 37) % 100;
  return bucket < 49 ? EfGroup::kLe45 : bucket < 68 ? EfGroup::kGe55 : EfGroup::kElse;
}

inline std::string patient_name(int index) {
  std::string digits = std::to_string(index + 1);
  return "patient" + std::string(4 - std::min<std::size_t>(4, digits.size()), '0') + digits;
}

/// Writes `patients` x {2CH,4CH} x {ED,ES} reference masks into `dir` and
/// returns the matching manifest rows.
inline std::vector<PatientCase> write_cohort(const std::filesystem::path& dir, int patients, std::uint64_t seed = 7,
                                             Spacing spacing = {0.3, 0.15}) {
  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> width(10.0, 14.0), length(34.0, 44.0), shrink(0.6, 0.85), view(0.9, 1.1);
  std::vector<PatientCase> cases;
  for (int p = 0; p < patients; ++p) {
    const Shape ed{width(rng), length(rng), 3.0, 9.0};
    const double es_scale = shrink(rng);
    const double v4 = view(rng);
    for (View v : kAllViews) {
      for (Instant i : kAllInstants) {
        Shape s = ed;
        if (v == View::k4CH) s.half_width *= v4;
        if (i == Instant::kES) {
          s.half_width *= es_scale;
          s.length *= 0.5 * (1.0 + es_scale);
        }
        PatientCase pc{patient_name(p), v, i, quality_for(p), ef_for(p), std::nullopt};
        write_mask(render(s, spacing), case_file(dir, key_of(pc)));
        cases.push_back(pc);
      }
    }
  }
  return cases;
}

inline void copy_cohort(const std::filesystem::path& from, const std::filesystem::path& to) {
  std::filesystem::create_directories(to);
  for (const auto& entry : std::filesystem::directory_iterator(from)) {
    std::filesystem::copy_file(entry.path(), to / entry.path().filename(),
                               std::filesystem::copy_options::overwrite_existing);
  }
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("camus-bench-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace camus::phantom

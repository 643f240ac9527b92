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
#include <string_view>

#include "camus/manifest.hpp"
#include "camus/metrics.hpp"

namespace camus {

/// Inter-observer variability limits (mm) beyond which a segmentation is an
/// outlier.
struct OutlierRule {
  double dm_max_ed = 3.5;
  double dm_max_es = 4.0;
  double dh_max_ed = 8.2;
  double dh_max_es = 8.8;

  double dm_max(Instant i) const noexcept { return i == Instant::kED ? dm_max_ed : dm_max_es; }
  double dh_max(Instant i) const noexcept { return i == Instant::kED ? dh_max_ed : dh_max_es; }

  /// Throws ValidationError unless every threshold is positive.
  void validate() const;
  bool operator==(const OutlierRule&) const = default;
};

/// How the d_m and d_H tests combine.
enum class OutlierMode {
  kAny,  // d_m or d_H above its limit
  kAll,  // both above their limits
};

std::string_view to_string(OutlierMode m);
std::optional<OutlierMode> parse_outlier_mode(std::string_view token);

/// Strict comparisons: a score equal to its limit is not an outlier.
bool classify_outlier(const GeometricScores& scores, Instant instant, const OutlierRule& rule = {},
                      OutlierMode mode = OutlierMode::kAny);

}  // namespace camus

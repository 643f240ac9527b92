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

#include "camus/outliers.hpp"

#include "camus/error.hpp"
#include "camus/number_format.hpp"

namespace camus {

void OutlierRule::validate() const {
  if (!(dm_max_ed > 0.0) || !(dm_max_es > 0.0) || !(dh_max_ed > 0.0) || !(dh_max_es > 0.0)) {
    throw ValidationError("outlier thresholds must be positive");
  }
}

std::string_view to_string(OutlierMode m) { return m == OutlierMode::kAny ? "any" : "all"; }

std::optional<OutlierMode> parse_outlier_mode(std::string_view token) {
  const auto t = to_lower(trim(token));
  if (t == "any" || t == "or") return OutlierMode::kAny;
  if (t == "all" || t == "and") return OutlierMode::kAll;
  return std::nullopt;
}

bool classify_outlier(const GeometricScores& scores, Instant instant, const OutlierRule& rule, OutlierMode mode) {
  const bool dm_out = scores.d_m > rule.dm_max(instant);
  const bool dh_out = scores.d_H > rule.dh_max(instant);
  return mode == OutlierMode::kAny ? (dm_out || dh_out) : (dm_out && dh_out);
}

}  // namespace camus

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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace camus {

enum class View { k2CH, k4CH };
enum class Instant { kED, kES };
enum class Quality { kGood, kMedium, kPoor };
/// LV ejection-fraction bands: <= 45 %, >= 55 %, in between.
enum class EfGroup { kLe45, kGe55, kElse };

inline constexpr View kAllViews[] = {View::k2CH, View::k4CH};
inline constexpr Instant kAllInstants[] = {Instant::kED, Instant::kES};
inline constexpr Quality kAllQualities[] = {Quality::kGood, Quality::kMedium, Quality::kPoor};
inline constexpr EfGroup kAllEfGroups[] = {EfGroup::kLe45, EfGroup::kGe55, EfGroup::kElse};

std::string_view to_string(View v);
std::string_view to_string(Instant i);
std::string_view to_string(Quality q);
std::string_view to_string(EfGroup g);

// Case-insensitive token parsers; nullopt on unknown tokens.
std::optional<View> parse_view(std::string_view token);
std::optional<Instant> parse_instant(std::string_view token);
std::optional<Quality> parse_quality(std::string_view token);
/// Accepts `le45`, `<=45`, `≤45%`, `ge55`, `>=55`, `≥55%`, `else`.
std::optional<EfGroup> parse_ef_group(std::string_view token);

/// One annotated image: a patient's view at one cardiac instant.
struct PatientCase {
  std::string patient_id;
  View view = View::k2CH;
  Instant instant = Instant::kED;
  Quality quality = Quality::kGood;
  EfGroup ef_group = EfGroup::kElse;
  std::optional<int> fold;

  bool operator==(const PatientCase&) const = default;
};

/// Identity of a case inside a manifest.
struct CaseKey {
  std::string patient_id;
  View view = View::k2CH;
  Instant instant = Instant::kED;

  auto operator<=>(const CaseKey&) const = default;
  bool operator==(const CaseKey&) const = default;
};

inline CaseKey key_of(const PatientCase& c) { return {c.patient_id, c.view, c.instant}; }
std::string to_string(const CaseKey& key);

/// CSV with header `patient_id,view,instant,quality,ef_group[,fold]`. The fold
/// column may be absent or left empty per row. Throws FormatError (with the
/// 1-based line number) on unknown tokens and on duplicate case keys.
std::vector<PatientCase> parse_manifest(std::string_view text);
std::vector<PatientCase> load_manifest(const std::filesystem::path& path);

/// Manifest text with the full six-column header; rows in input order.
std::string format_manifest(const std::vector<PatientCase>& cases);

}  // namespace camus

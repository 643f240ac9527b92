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

#include "camus/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "camus/error.hpp"
#include "camus/number_format.hpp"

namespace camus {
namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void row_error(std::size_t line_no, const std::string& column, const std::string& message) {
  throw FormatError("manifest line " + std::to_string(line_no) + ": " + message, column);
}

}  // namespace

std::string_view to_string(View v) { return v == View::k2CH ? "2CH" : "4CH"; }
std::string_view to_string(Instant i) { return i == Instant::kED ? "ED" : "ES"; }

std::string_view to_string(Quality q) {
  switch (q) {
    case Quality::kGood: return "Good";
    case Quality::kMedium: return "Medium";
    case Quality::kPoor: return "Poor";
  }
  return "?";
}

std::string_view to_string(EfGroup g) {
  switch (g) {
    case EfGroup::kLe45: return "le45";
    case EfGroup::kGe55: return "ge55";
    case EfGroup::kElse: return "else";
  }
  return "?";
}

std::string to_string(const CaseKey& key) {
  return key.patient_id + "_" + std::string(to_string(key.view)) + "_" + std::string(to_string(key.instant));
}

std::optional<View> parse_view(std::string_view token) {
  const auto t = to_lower(trim(token));
  if (t == "2ch") return View::k2CH;
  if (t == "4ch") return View::k4CH;
  return std::nullopt;
}

std::optional<Instant> parse_instant(std::string_view token) {
  const auto t = to_lower(trim(token));
  if (t == "ed") return Instant::kED;
  if (t == "es") return Instant::kES;
  return std::nullopt;
}

std::optional<Quality> parse_quality(std::string_view token) {
  const auto t = to_lower(trim(token));
  if (t == "good") return Quality::kGood;
  if (t == "medium") return Quality::kMedium;
  if (t == "poor") return Quality::kPoor;
  return std::nullopt;
}

std::optional<EfGroup> parse_ef_group(std::string_view token) {
  const auto t = to_lower(trim(token));
  if (t == "le45" || t == "<=45" || t == "<=45%" || t == "\xe2\x89\xa4" "45" || t == "\xe2\x89\xa4" "45%") {
    return EfGroup::kLe45;
  }
  if (t == "ge55" || t == ">=55" || t == ">=55%" || t == "\xe2\x89\xa5" "55" || t == "\xe2\x89\xa5" "55%") {
    return EfGroup::kGe55;
  }
  if (t == "else") return EfGroup::kElse;
  return std::nullopt;
}

std::vector<PatientCase> parse_manifest(std::string_view text) {
  if (text.starts_with("\xef\xbb\xbf")) text.remove_prefix(3);  // UTF-8 BOM

  std::vector<PatientCase> cases;
  std::set<CaseKey> seen;
  bool have_header = false;
  bool has_fold = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = eol + 1;
    ++line_no;
    if (trim(line).empty()) continue;

    const auto fields = split_csv_line(line);
    if (!have_header) {
      const std::vector<std::string> base{"patient_id", "view", "instant", "quality", "ef_group"};
      std::vector<std::string> lowered;
      for (const auto& f : fields) lowered.push_back(to_lower(f));
      auto with_fold = base;
      with_fold.push_back("fold");
      if (lowered == with_fold) {
        has_fold = true;
      } else if (lowered != base) {
        throw FormatError("manifest header must be 'patient_id,view,instant,quality,ef_group,fold'");
      }
      have_header = true;
      continue;
    }

    const std::size_t expected = has_fold ? 6 : 5;
    if (fields.size() != expected) {
      row_error(line_no, "", "expected " + std::to_string(expected) + " columns, found " +
                                 std::to_string(fields.size()));
    }

    PatientCase c;
    c.patient_id = fields[0];
    if (c.patient_id.empty()) row_error(line_no, "patient_id", "empty patient_id");
    const auto view = parse_view(fields[1]);
    if (!view) row_error(line_no, "view", "unknown view '" + fields[1] + "'");
    const auto instant = parse_instant(fields[2]);
    if (!instant) row_error(line_no, "instant", "unknown instant '" + fields[2] + "'");
    const auto quality = parse_quality(fields[3]);
    if (!quality) row_error(line_no, "quality", "unknown quality '" + fields[3] + "'");
    const auto ef = parse_ef_group(fields[4]);
    if (!ef) row_error(line_no, "ef_group", "unknown ef_group '" + fields[4] + "'");
    c.view = *view;
    c.instant = *instant;
    c.quality = *quality;
    c.ef_group = *ef;
    if (has_fold && !fields[5].empty()) {
      const auto fold = parse_int(fields[5]);
      if (!fold || *fold < 1) row_error(line_no, "fold", "fold must be a positive integer, got '" + fields[5] + "'");
      c.fold = static_cast<int>(*fold);
    }

    if (!seen.insert(key_of(c)).second) {
      row_error(line_no, "patient_id", "duplicate case " + to_string(key_of(c)));
    }
    cases.push_back(std::move(c));
  }
  if (!have_header) throw FormatError("manifest is empty (missing header row)");
  return cases;
}

std::vector<PatientCase> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_manifest(buffer.str());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what(), e.key());
  }
}

std::string format_manifest(const std::vector<PatientCase>& cases) {
  std::string out = "patient_id,view,instant,quality,ef_group,fold\n";
  for (const auto& c : cases) {
    out += c.patient_id;
    out += ',';
    out += to_string(c.view);
    out += ',';
    out += to_string(c.instant);
    out += ',';
    out += to_string(c.quality);
    out += ',';
    out += to_string(c.ef_group);
    out += ',';
    if (c.fold) out += std::to_string(*c.fold);
    out += '\n';
  }
  return out;
}

}  // namespace camus

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

#include "camus/folds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>
#include <set>

#include "camus/error.hpp"
#include "camus/number_format.hpp"

namespace camus {
namespace {

struct PatientStratum {
  Quality quality;
  EfGroup ef_group;
};

std::map<std::string, PatientStratum> patient_strata(std::span<const PatientCase> cases) {
  std::map<std::string, PatientStratum> strata;
  for (const auto& c : cases) {
    auto [it, inserted] = strata.try_emplace(c.patient_id, PatientStratum{c.quality, c.ef_group});
    if (inserted) continue;
    if (it->second.ef_group != c.ef_group) {
      throw ValidationError("patient " + c.patient_id + " has inconsistent ef_group across rows");
    }
    it->second.quality = std::max(it->second.quality, c.quality);  // enum order: Good < Medium < Poor
  }
  return strata;
}

// Unbiased draw in [0, bound) by rejection; independent of the standard
// library's distribution implementations.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

}  // namespace

FoldAssignment make_folds(std::span<const PatientCase> cases, std::size_t k, std::uint64_t seed) {
  const auto strata = patient_strata(cases);
  if (k == 0) throw DomainError("fold count must be positive");
  if (k > strata.size()) {
    throw DomainError("cannot split " + std::to_string(strata.size()) + " patients into " + std::to_string(k) + " folds");
  }

  std::array<std::array<std::vector<std::string>, 3>, 3> cells;
  for (const auto& [id, s] : strata) {
    cells[static_cast<int>(s.quality)][static_cast<int>(s.ef_group)].push_back(id);  // map order: sorted ids
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> size(k, 0);
  std::vector<std::array<std::size_t, 3>> quality_count(k, {0, 0, 0});
  std::vector<std::array<std::size_t, 3>> ef_count(k, {0, 0, 0});

  FoldAssignment out;
  out.k = k;
  for (int q = 0; q < 3; ++q) {
    for (int e = 0; e < 3; ++e) {
      auto& ids = cells[q][e];
      for (std::size_t i = ids.size(); i > 1; --i) std::swap(ids[i - 1], ids[bounded(rng, i)]);
      for (const auto& id : ids) {
        std::size_t best = 0;
        for (std::size_t f = 1; f < k; ++f) {
          const auto key = std::tie(size[f], quality_count[f][q], ef_count[f][e]);
          const auto best_key = std::tie(size[best], quality_count[best][q], ef_count[best][e]);
          if (key < best_key) best = f;
        }
        ++size[best];
        ++quality_count[best][q];
        ++ef_count[best][e];
        out.fold_of[id] = static_cast<int>(best) + 1;
      }
    }
  }
  return out;
}

double FoldComposition::max_share_deviation() const {
  double worst = 0.0;
  if (total_patients == 0) return worst;
  const double total = static_cast<double>(total_patients);
  for (std::size_t f = 0; f < patients.size(); ++f) {
    if (patients[f] == 0) continue;
    const double n = static_cast<double>(patients[f]);
    for (int i = 0; i < 3; ++i) {
      worst = std::max(worst, std::abs(100.0 * quality[f][i] / n - 100.0 * total_quality[i] / total));
      worst = std::max(worst, std::abs(100.0 * ef_group[f][i] / n - 100.0 * total_ef_group[i] / total));
    }
  }
  return worst;
}

FoldComposition fold_composition(std::span<const PatientCase> cases, const FoldAssignment& folds) {
  const auto strata = patient_strata(cases);
  FoldComposition c;
  c.patients.assign(folds.k, 0);
  c.quality.assign(folds.k, {0, 0, 0});
  c.ef_group.assign(folds.k, {0, 0, 0});
  for (const auto& [id, s] : strata) {
    const auto it = folds.fold_of.find(id);
    if (it == folds.fold_of.end()) throw MismatchError("patient " + id + " has no fold");
    const std::size_t f = static_cast<std::size_t>(it->second - 1);
    if (f >= folds.k) throw ValidationError("patient " + id + " has fold outside 1.." + std::to_string(folds.k));
    ++c.patients[f];
    ++c.quality[f][static_cast<int>(s.quality)];
    ++c.ef_group[f][static_cast<int>(s.ef_group)];
    ++c.total_quality[static_cast<int>(s.quality)];
    ++c.total_ef_group[static_cast<int>(s.ef_group)];
    ++c.total_patients;
  }
  return c;
}

std::string format_folds_csv(const FoldAssignment& folds) {
  std::string out = "patient_id,fold\n";
  for (const auto& [id, fold] : folds.fold_of) out += id + "," + std::to_string(fold) + "\n";
  return out;
}

FoldAssignment parse_folds_csv(std::string_view text) {
  FoldAssignment out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool header = false;
  int max_fold = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!header) {
      if (to_lower(line) != "patient_id,fold") throw FormatError("folds file header must be 'patient_id,fold'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw FormatError("folds line " + std::to_string(line_no) + ": expected 'patient_id,fold'");
    }
    const std::string id(trim(line.substr(0, comma)));
    const auto fold = parse_int(line.substr(comma + 1));
    if (id.empty() || !fold || *fold < 1) {
      throw FormatError("folds line " + std::to_string(line_no) + ": invalid row", "fold");
    }
    if (!out.fold_of.emplace(id, static_cast<int>(*fold)).second) {
      throw FormatError("folds line " + std::to_string(line_no) + ": duplicate patient " + id, "patient_id");
    }
    max_fold = std::max(max_fold, static_cast<int>(*fold));
  }
  if (!header) throw FormatError("folds file is empty");
  out.k = static_cast<std::size_t>(max_fold);
  return out;
}

std::vector<PatientCase> with_folds(std::span<const PatientCase> cases, const FoldAssignment& folds) {
  std::vector<PatientCase> out(cases.begin(), cases.end());
  for (auto& c : out) {
    const auto it = folds.fold_of.find(c.patient_id);
    if (it == folds.fold_of.end()) throw MismatchError("patient " + c.patient_id + " is missing from the fold assignment");
    c.fold = it->second;
  }
  return out;
}

}  // namespace camus

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

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "camus/manifest.hpp"

namespace camus {

/// patient_id -> fold index in 1..k.
struct FoldAssignment {
  std::size_t k = 0;
  std::map<std::string, int> fold_of;

  bool operator==(const FoldAssignment&) const = default;
};

/// Stratified k-fold split of the patients in `cases`.
///
/// Patients are grouped into (quality, EF group) cells, each cell is
/// shuffled with a seeded mt19937_64 Fisher-Yates pass, and the cells are
/// dealt in a fixed order. Each patient goes to the fold with the fewest
/// patients, breaking ties by the fewest patients of its quality, then of
/// its EF group, then by the lowest fold index. A patient's quality is the
/// poorest over its rows; its EF group must be the same on every row.
///
/// Throws DomainError when k is 0 or exceeds the number of patients, and
/// ValidationError on inconsistent EF groups.
FoldAssignment make_folds(std::span<const PatientCase> cases, std::size_t k = 10, std::uint64_t seed = 0);

/// Per-fold patient counts by stratum.
struct FoldComposition {
  std::vector<std::size_t> patients;                   // [fold - 1]
  std::vector<std::array<std::size_t, 3>> quality;      // [fold - 1][Quality]
  std::vector<std::array<std::size_t, 3>> ef_group;     // [fold - 1][EfGroup]
  std::array<std::size_t, 3> total_quality{};
  std::array<std::size_t, 3> total_ef_group{};
  std::size_t total_patients = 0;

  /// Largest |fold share - global share| in percentage points over all
  /// folds, qualities and EF groups.
  double max_share_deviation() const;
};

FoldComposition fold_composition(std::span<const PatientCase> cases, const FoldAssignment& folds);

/// `patient_id,fold` rows sorted by patient id.
std::string format_folds_csv(const FoldAssignment& folds);
FoldAssignment parse_folds_csv(std::string_view text);

/// Copies `cases` with the fold field set from `folds`; throws
/// MismatchError for patients missing from the assignment.
std::vector<PatientCase> with_folds(std::span<const PatientCase> cases, const FoldAssignment& folds);

}  // namespace camus

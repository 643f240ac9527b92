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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace camus {

/// Agreement of paired measurements `user` vs `ref`.
///
/// `std` is the population (1/n) standard deviation of the differences and
/// the limits of agreement are bias -/+ 1.96 std. `mae` may be smaller than
/// |bias| only through rounding; no ordering between them is enforced.
struct AgreementStats {
  std::size_t n = 0;
  /// Pearson correlation; nullopt for fewer than two pairs or a constant
  /// series.
  std::optional<double> corr;
  double bias = 0.0;
  double std = 0.0;
  double mae = 0.0;
  double loa_low = 0.0;
  double loa_high = 0.0;

  bool operator==(const AgreementStats&) const = default;
};

inline constexpr double kLoaMultiplier = 1.96;

/// Throws MismatchError on unequal lengths and DomainError on empty input.
AgreementStats agreement(std::span<const double> user, std::span<const double> ref);

/// Pearson correlation; nullopt when undefined. Throws MismatchError on
/// unequal lengths.
std::optional<double> pearson(std::span<const double> a, std::span<const double> b);

struct BlandAltmanPoint {
  double mean = 0.0;
  double difference = 0.0;
};

struct BlandAltman {
  std::vector<BlandAltmanPoint> points;  // input order
  AgreementStats stats;
};

BlandAltman bland_altman(std::span<const double> user, std::span<const double> ref);

/// `mean,difference` header then one row per pair; no summary rows.
std::string render_bland_altman_csv(const BlandAltman& ba);

enum class WilcoxonMethod { kExact, kNormalApproximation };
std::string_view to_string(WilcoxonMethod m);

struct WilcoxonResult {
  /// Sum of (mid-)ranks of the positive differences x - y.
  double w_plus = 0.0;
  std::size_t n_effective = 0;
  double p_value = 1.0;
  WilcoxonMethod method = WilcoxonMethod::kExact;

  bool operator==(const WilcoxonResult&) const = default;
};

/// Largest number of non-zero differences handled by the exact null
/// distribution; above it the tie-corrected normal approximation is used.
inline constexpr std::size_t kWilcoxonExactLimit = 25;

/// Two-sided Wilcoxon signed-rank test of the paired samples. Zero
/// differences are dropped and tied |differences| get mid-ranks. The exact
/// p-value is P(|W+ - mu| >= |w+ - mu|) over all 2^n sign assignments. An
/// infinite difference ranks above every finite one; inf - inf counts as 0.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

/// Population mean and standard deviation.
struct MeanStd {
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;

  bool operator==(const MeanStd&) const = default;
};
MeanStd mean_std(std::span<const double> values);

}  // namespace camus

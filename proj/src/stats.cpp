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

#include "camus/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>

#include "camus/error.hpp"
#include "camus/number_format.hpp"

namespace camus {
namespace {

void check_paired(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw MismatchError("paired series have different lengths (" + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
  }
}

double signed_difference(double x, double y) {
  if (std::isinf(x) && std::isinf(y) && (x > 0) == (y > 0)) return 0.0;
  return x - y;
}

}  // namespace

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  out.n = values.size();
  if (values.empty()) return out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std = std::sqrt(ss / static_cast<double>(values.size()));
  return out;
}

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
  check_paired(a, b);
  if (a.size() < 2) return std::nullopt;
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) return std::nullopt;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

AgreementStats agreement(std::span<const double> user, std::span<const double> ref) {
  check_paired(user, ref);
  if (user.empty()) throw DomainError("agreement needs at least one pair");

  std::vector<double> diff(user.size());
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < user.size(); ++i) {
    diff[i] = user[i] - ref[i];
    abs_sum += std::abs(diff[i]);
  }
  const MeanStd d = mean_std(diff);

  AgreementStats s;
  s.n = user.size();
  s.corr = pearson(user, ref);
  s.bias = d.mean;
  s.std = d.std;
  s.mae = abs_sum / static_cast<double>(user.size());
  s.loa_low = s.bias - kLoaMultiplier * s.std;
  s.loa_high = s.bias + kLoaMultiplier * s.std;
  return s;
}

BlandAltman bland_altman(std::span<const double> user, std::span<const double> ref) {
  BlandAltman out;
  out.stats = agreement(user, ref);
  out.points.reserve(user.size());
  for (std::size_t i = 0; i < user.size(); ++i) {
    out.points.push_back({0.5 * (user[i] + ref[i]), user[i] - ref[i]});
  }
  return out;
}

std::string render_bland_altman_csv(const BlandAltman& ba) {
  std::string out = "mean,difference\n";
  for (const auto& p : ba.points) {
    out += format_double(p.mean);
    out += ',';
    out += format_double(p.difference);
    out += '\n';
  }
  return out;
}

std::string_view to_string(WilcoxonMethod m) {
  return m == WilcoxonMethod::kExact ? "exact" : "normal-approximation";
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
  check_paired(x, y);

  std::vector<double> diffs;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = signed_difference(x[i], y[i]);
    if (std::isnan(d)) throw DomainError("wilcoxon: NaN in paired samples");
    if (d != 0.0) diffs.push_back(d);
  }

  WilcoxonResult result;
  result.n_effective = diffs.size();
  const std::size_t n = diffs.size();
  if (n == 0) return result;

  // Doubled mid-ranks are integers.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(diffs[a]) < std::abs(diffs[b]); });
  std::vector<std::uint64_t> rank2(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) ++j;
    const std::uint64_t doubled = (i + 1) + (j + 1);  // 2 * mean of ranks i+1..j+1
    for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = doubled;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }

  std::uint64_t w2 = 0;
  std::uint64_t total2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total2 += rank2[i];
    if (diffs[i] > 0.0) w2 += rank2[i];
  }
  result.w_plus = static_cast<double>(w2) / 2.0;

  if (n <= kWilcoxonExactLimit) {
    // counts[s] = number of sign assignments whose doubled positive rank sum is s.
    std::vector<std::uint64_t> counts(total2 + 1, 0);
    counts[0] = 1;
    std::uint64_t reach = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::uint64_t s = reach + 1; s-- > 0;) {
        if (counts[s] != 0) counts[s + rank2[i]] += counts[s];
      }
      reach += rank2[i];
    }
    const auto centered = [&](std::uint64_t s) {
      const std::int64_t v = 2 * static_cast<std::int64_t>(s) - static_cast<std::int64_t>(total2);
      return v < 0 ? -v : v;
    };
    const std::int64_t observed = centered(w2);
    std::uint64_t extreme = 0;
    for (std::uint64_t s = 0; s <= total2; ++s) {
      if (counts[s] != 0 && centered(s) >= observed) extreme += counts[s];
    }
    result.method = WilcoxonMethod::kExact;
    result.p_value = std::min(1.0, static_cast<double>(extreme) / std::ldexp(1.0, static_cast<int>(n)));
    return result;
  }

  const double nn = static_cast<double>(n);
  const double mu = nn * (nn + 1.0) / 4.0;
  const double variance = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
  const double deviation = std::max(0.0, std::abs(result.w_plus - mu) - 0.5);
  const double z = variance > 0.0 ? deviation / std::sqrt(variance) : 0.0;
  result.method = WilcoxonMethod::kNormalApproximation;
  result.p_value = std::clamp(std::erfc(z / std::numbers::sqrt2), 0.0, 1.0);
  return result;
}

}  // namespace camus

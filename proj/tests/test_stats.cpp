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

#include <cmath>
#include <random>

#include "camus/error.hpp"
#include "camus/stats.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace camus;

namespace {

std::vector<double> random_series(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> out(n);
  for (auto& v : out) v = u(rng);
  return out;
}

}  // namespace

TEST_CASE("affine relation gives unit correlation") {
  const std::vector<double> ref{3, 1, 4, 1, 5, 9, 2, 6};
  std::vector<double> user;
  for (double r : ref) user.push_back(2.0 * r + 1.0);
  const AgreementStats s = agreement(user, ref);
  REQUIRE(s.corr.has_value());
  CHECK(*s.corr == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.n == ref.size());
}

TEST_CASE("constant offset") {
  const std::vector<double> ref{10, 20, 35, 41};
  const std::vector<double> user{15, 25, 40, 46};
  const AgreementStats s = agreement(user, ref);
  CHECK(s.bias == 5.0);
  CHECK(s.std == 0.0);
  CHECK(s.mae == 5.0);
  CHECK(s.loa_low == 5.0);
  CHECK(s.loa_high == 5.0);
}

TEST_CASE("identity and constant series") {
  const std::vector<double> ref{1, 2, 3};
  const AgreementStats s = agreement(ref, ref);
  CHECK(*s.corr == doctest::Approx(1.0));
  CHECK(s.bias == 0.0);
  CHECK(s.mae == 0.0);
  const std::vector<double> flat{4, 4, 4};
  const AgreementStats f = agreement(flat, flat);
  CHECK_FALSE(f.corr.has_value());
  CHECK(f.bias == 0.0);
  CHECK_FALSE(agreement(std::vector<double>{1.0}, std::vector<double>{2.0}).corr.has_value());
}

TEST_CASE("agreement errors") {
  CHECK_THROWS_AS(agreement(std::vector<double>{1, 2}, std::vector<double>{1}), MismatchError);
  CHECK_THROWS_AS(agreement(std::vector<double>{}, std::vector<double>{}), DomainError);
}

TEST_CASE("agreement matches direct formulas") {
  std::mt19937_64 rng(47);
  const auto ref = random_series(rng, 57, 20, 200);
  auto user = ref;
  std::normal_distribution<double> noise(2.0, 7.0);
  for (auto& u : user) u += noise(rng);
  const AgreementStats s = agreement(user, ref);
  double bias = 0, mae = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    bias += user[i] - ref[i];
    mae += std::abs(user[i] - ref[i]);
  }
  bias /= ref.size();
  mae /= ref.size();
  double var = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) var += (user[i] - ref[i] - bias) * (user[i] - ref[i] - bias);
  const double sd = std::sqrt(var / ref.size());
  CHECK(s.bias == doctest::Approx(bias).epsilon(1e-12));
  CHECK(s.mae == doctest::Approx(mae).epsilon(1e-12));
  CHECK(s.std == doctest::Approx(sd).epsilon(1e-12));
  CHECK(s.loa_low == doctest::Approx(bias - 1.96 * sd).epsilon(1e-12));
  CHECK(s.loa_high == doctest::Approx(bias + 1.96 * sd).epsilon(1e-12));
  CHECK(s.mae >= 0.0);
}

TEST_CASE("pearson under affine maps") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_series(rng, 20, -5, 5);
    const auto b = random_series(rng, 20, -5, 5);
    const double r = *pearson(a, b);
    std::vector<double> up, down;
    for (double v : a) {
      up.push_back(3.5 * v - 2.0);
      down.push_back(-0.25 * v + 9.0);
    }
    CHECK(*pearson(up, b) == doctest::Approx(r).epsilon(1e-10));
    CHECK(*pearson(down, b) == doctest::Approx(-r).epsilon(1e-10));
    CHECK(std::abs(r) <= 1.0);
  }
}

TEST_CASE("duplicated cohorts agree with one copy") {
  std::mt19937_64 rng(59);
  const auto a = random_series(rng, 30, 0, 10);
  const auto b = random_series(rng, 30, 0, 10);
  std::vector<double> aa = a, bb = b;
  aa.insert(aa.end(), a.begin(), a.end());
  bb.insert(bb.end(), b.begin(), b.end());
  const AgreementStats one = agreement(a, b), two = agreement(aa, bb);
  CHECK(two.bias == doctest::Approx(one.bias).epsilon(1e-12));
  CHECK(two.std == doctest::Approx(one.std).epsilon(1e-12));
  CHECK(two.mae == doctest::Approx(one.mae).epsilon(1e-12));
  CHECK(*two.corr == doctest::Approx(*one.corr).epsilon(1e-12));
}

TEST_CASE("Bland-Altman pairs") {
  const BlandAltman one = bland_altman(std::vector<double>{10}, std::vector<double>{8});
  REQUIRE(one.points.size() == 1);
  CHECK(one.points[0].mean == 9.0);
  CHECK(one.points[0].difference == 2.0);
  CHECK(render_bland_altman_csv(one) == "mean,difference\n9,2\n");

  const std::vector<double> same{1, 5, 9};
  for (const auto& p : bland_altman(same, same).points) CHECK(p.difference == 0.0);
  CHECK(bland_altman(same, same).stats.bias == 0.0);

  std::mt19937_64 rng(61);
  const auto u = random_series(rng, 100, 0, 100), r = random_series(rng, 100, 0, 100);
  const BlandAltman ba = bland_altman(u, r);
  double mean_diff = 0.0;
  for (const auto& p : ba.points) mean_diff += p.difference;
  mean_diff /= ba.points.size();
  CHECK(std::abs(mean_diff - ba.stats.bias) <= 1e-12);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(ba.points[i].mean == (u[i] + r[i]) / 2.0);
}

TEST_CASE("Wilcoxon degenerate and textbook cases") {
  const std::vector<double> x{1, 2, 3};
  const WilcoxonResult same = wilcoxon_signed_rank(x, x);
  CHECK(same.p_value == 1.0);
  CHECK(same.n_effective == 0);
  CHECK(same.method == WilcoxonMethod::kExact);

  const std::vector<double> d{1, 2, 3, 4, 5}, zero(5, 0.0);
  const WilcoxonResult r = wilcoxon_signed_rank(d, zero);
  CHECK(r.w_plus == 15.0);
  CHECK(r.n_effective == 5);
  CHECK(r.p_value == 0.0625);
  CHECK(wilcoxon_signed_rank(zero, d).w_plus == 0.0);
  CHECK(wilcoxon_signed_rank(zero, d).p_value == 0.0625);

  CHECK_THROWS_AS(wilcoxon_signed_rank(d, x), MismatchError);
}

TEST_CASE("Wilcoxon matches full enumeration for n up to 12") {
  std::mt19937_64 rng(67);
  std::uniform_int_distribution<int> size(1, 12), coarse(-4, 4);
  std::uniform_real_distribution<double> fine(-3.0, 3.0);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = static_cast<std::size_t>(size(rng));
    std::vector<double> x(n), y(n, 0.0);
    // Half the samples are integer-valued to exercise ties and zeros.
    for (auto& v : x) v = t % 2 ? coarse(rng) : fine(rng);
    const WilcoxonResult got = wilcoxon_signed_rank(x, y);
    const auto want = oracle::signed_rank_enumeration(x, y);
    REQUIRE(got.n_effective == want.n);
    CHECK(got.w_plus == want.w_plus);
    CHECK(got.p_value == want.p_value);
    CHECK(got.p_value == wilcoxon_signed_rank(y, x).p_value);
  }
}

TEST_CASE("exact and normal approximation agree near the switch-over") {
  std::mt19937_64 rng(71);
  std::normal_distribution<double> shift(0.0, 1.0);
  for (std::size_t n = 20; n <= 25; ++n) {
    for (int t = 0; t < 20; ++t) {
      std::vector<double> x(n), y(n, 0.0);
      for (auto& v : x) v = shift(rng) + 0.3;
      const WilcoxonResult exact = wilcoxon_signed_rank(x, y);
      REQUIRE(exact.method == WilcoxonMethod::kExact);
      // Continuous data, so no tie correction.
      const double w = exact.w_plus;
      const double total = n * (n + 1) / 2.0;
      const double mu = total / 2.0;
      const double sigma = std::sqrt(n * (n + 1) * (2.0 * n + 1) / 24.0);
      const double z = std::max(0.0, std::abs(w - mu) - 0.5) / sigma;
      const double p_normal = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
      CHECK(std::abs(exact.p_value - p_normal) <= 0.01);
    }
  }
}

TEST_CASE("large samples use the tie-corrected normal approximation") {
  std::vector<double> x, y;
  for (int i = 0; i < 30; ++i) {
    x.push_back(i % 3 == 0 ? 1.0 : 2.0);  // ties only
    y.push_back(0.0);
  }
  const WilcoxonResult r = wilcoxon_signed_rank(x, y);
  CHECK(r.method == WilcoxonMethod::kNormalApproximation);
  CHECK(r.n_effective == 30);
  CHECK(r.w_plus == 465.0);
  // Ranks: ten 1s share 5.5, twenty 2s share 20.5.
  const double mu = 465.0 / 2.0;
  const double ties = (10.0 * 10 * 10 - 10) + (20.0 * 20 * 20 - 20);
  const double sigma = std::sqrt(30.0 * 31 * 61 / 24.0 - ties / 48.0);
  CHECK(r.p_value == doctest::Approx(std::erfc((465.0 - mu - 0.5) / sigma / std::sqrt(2.0))).epsilon(1e-12));
  CHECK(r.p_value >= 0.0);
}

TEST_CASE("mean and population std") {
  const MeanStd m = mean_std(std::vector<double>{2, 4, 4, 4, 5, 5, 7, 9});
  CHECK(m.n == 8);
  CHECK(m.mean == 5.0);
  CHECK(m.std == 2.0);
  CHECK(mean_std(std::vector<double>{}).n == 0);
}

/* Copyright (C) 2026 The lindev Authors
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lindev/coefficients.hpp"
#include "lindev/deviation.hpp"
#include "lindev/error.hpp"
#include "lindev/innovation.hpp"
#include "lindev/special_math.hpp"

using namespace lindev;
using doctest::Approx;

namespace {

CoefficientArray from(std::vector<double> w) { return {1, std::move(w), 0.0, {"test", {}}}; }

// A coefficient array with D_nt = exp(-k), t = 4: m equal weights give D = m^{-1}.
CoefficientArray with_log_inv_d4(double k) {
  const auto m = static_cast<std::size_t>(std::llround(std::exp(k)));
  return iid_weights(m);
}

const CoefficientArray& fig_coeffs() {
  static const auto c = ma_window_coeffs(regvar_coeffs(0.9), 300, {1e-2, 10'000'000});
  return c;
}

}  // namespace

TEST_CASE("student t innovation fields") {
  const StudentT t3(3.0);
  CHECK(t3.sigma2() == Approx(3.0));
  CHECK(t3.tail_exponent() == 3.0);
  CHECK(t3.moment_order() == Approx(2.5));
  CHECK(t3.tail_constant() == Approx(1.1026577908435841).epsilon(1e-13));
  CHECK(StudentT(5.0).tail_constant() == Approx(9.4901672455623612).epsilon(1e-13));
  CHECK(t3.survival(0.5) == Approx(0.3257239824240755).epsilon(1e-13));
  CHECK(t3.survival(1.0) == Approx(0.19550110947788532).epsilon(1e-13));
  CHECK(t3.survival(2.0) == Approx(0.069662984279421588).epsilon(1e-13));
  CHECK(t3.survival(5.0) == Approx(0.0076962190366511505).epsilon(1e-13));
  CHECK(t3.cdf(1.0) + t3.survival(1.0) == Approx(1.0));
  CHECK_THROWS_AS(StudentT(2.0), DomainError);
}

TEST_CASE("tail fields agree with the survival function") {
  for (double nu : {2.5, 3.0, 4.0, 7.0}) {
    const StudentT m(nu);
    const double r = m.survival(1e3) * std::pow(1e3, nu) / m.tail_constant();
    CHECK(std::abs(r - 1.0) < 0.1);
    CHECK(m.cf(0.0) == 1.0);
    double prev = 1.0;
    for (double x = -50.0; x <= 50.0; x += 0.5) {
      const double s = m.survival(x);
      CHECK(s <= prev);
      prev = s;
      CHECK(std::abs(m.cf(x)) <= 1.0);
    }
    CHECK(m.survival(-1e8) > 1.0 - 1e-12);
  }
}

TEST_CASE("uniform innovation") {
  const UniformInnovation u(2.0);
  CHECK(u.sigma2() == Approx(4.0 / 3.0));
  CHECK(u.survival(1.0) == Approx(0.25));
  CHECK(u.survival(3.0) == 0.0);
  CHECK(u.cf(0.0) == 1.0);
  CHECK(u.cf(1.0) == Approx(std::sin(2.0) / 2.0));
}

TEST_CASE("samplers reproduce their laws") {
  Rng rng(11);
  const StudentT t4(4.0);
  std::vector<double> x(400'000);
  t4.sample(rng, x);
  std::size_t above = 0;
  double m2 = 0.0;
  for (double v : x) {
    above += v >= 1.5;
    m2 += v * v;
  }
  const double p = t4.survival(1.5);
  const double phat = double(above) / x.size();
  CHECK(std::abs(phat - p) < 4.0 * std::sqrt(p * (1 - p) / x.size()));
  CHECK(m2 / x.size() == Approx(2.0).epsilon(0.05));

  const UniformInnovation u(1.0);
  u.sample(rng, x);
  double lo = 1, hi = -1, mean = 0;
  for (double v : x) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    mean += v;
  }
  CHECK(lo >= -1.0);
  CHECK(hi <= 1.0);
  CHECK(std::abs(mean / x.size()) < 4.0 * std::sqrt(1.0 / 3.0 / x.size()));
}

TEST_CASE("power_sum") {
  CHECK(power_sum(iid_weights(4), 4.0) == 4.0);
  CHECK(power_sum(from({0.5, 0.5}), 2.0) == 0.5);
  CHECK(power_sum(from({1, 2, 3}), 3.0) == Approx(36.0).epsilon(1e-15));
  CHECK(power_sum(from({1, 0, 0, 2}), 3.0) == Approx(9.0).epsilon(1e-15));
}

TEST_CASE("dnt") {
  CHECK(dnt(iid_weights(4), 4.0) == Approx(0.25).epsilon(1e-15));
  CHECK(dnt(from({2.7}), 3.3) == Approx(1.0).epsilon(1e-15));
  const auto c = from({0.3, 1.2, 0.01, 4.0});
  CHECK(dnt(c.scaled(17.0), 3.0) == Approx(dnt(c, 3.0)).epsilon(1e-13));
  CHECK_THROWS_AS(dnt(from({0.0, 0.0}), 3.0), DegenerateError);
  for (std::size_t n : {10u, 100u, 1000u}) CHECK(dnt(iid_weights(n), 3.0) == Approx(std::pow(double(n), -0.5)).epsilon(1e-12));
}

TEST_CASE("classify_zone") {
  const double d = std::exp(-8.0);
  CHECK(classify_zone_from_dnt(3.0, d) == Zone::Moderate);
  CHECK(classify_zone_from_dnt(5.0, d) == Zone::Large);
  for (double band : {0.0, 0.05, 0.3}) CHECK(classify_zone_from_dnt(4.0, d, band) == Zone::Boundary);
  CHECK(classify_zone_from_dnt(3.85, d) == Zone::Boundary);
  CHECK(classify_zone_from_dnt(3.79, d) == Zone::Moderate);
  CHECK_THROWS_AS(classify_zone_from_dnt(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(classify_zone(1.0, from({5.0}), 3.0), DomainError);
  // through the array: 2981 equal weights give ln(1/D_n4) close to 8
  const auto c = with_log_inv_d4(8.0);
  CHECK(classify_zone(3.0, c, 4.0) == Zone::Moderate);
  CHECK(classify_zone(5.0, c, 4.0) == Zone::Large);
}

TEST_CASE("tail_term") {
  const StudentT t3(3.0);
  const auto one = normalize_unit_variance(from({1.0}), t3.sigma2());
  CHECK(tail_term(one, t3, 0.0).value == Approx(0.5));
  CHECK(tail_term(from({1.0}), t3, 1.0).value == Approx(t3.survival(std::sqrt(3.0))).epsilon(1e-14));
  const auto c = iid_weights(50);
  const double sn = sigma_n(c, t3.sigma2());
  for (double x : {0.5, 2.0, 7.0}) CHECK(tail_term(c, t3, x).value == Approx(50.0 * t3.survival(x * sn)).epsilon(1e-13));

  const auto& w = fig_coeffs();
  const double x = 30.0;
  const double tail = tail_term(w, t3, x).value;
  const double asym = t3.tail_constant() * dnt(w, 3.0) / std::pow(std::sqrt(3.0) * x, 3.0);
  CHECK(tail > 0.0);
  CHECK(std::abs(tail / asym - 1.0) < 0.25);
  CHECK(tail_term(w, t3, x).truncation_error_bound > 0.0);
}

TEST_CASE("tail_term is nonincreasing in x") {
  const StudentT t3(3.0);
  const auto& w = fig_coeffs();
  double prev = tail_term(w, t3, 0.01).value;
  for (int k = 1; k <= 200; ++k) {
    const double v = tail_term(w, t3, 0.01 * std::pow(2000.0, k / 200.0)).value;
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("deviation_approx") {
  const StudentT t3(3.0);
  const auto& w = fig_coeffs();
  double prev_ratio = INFINITY;
  for (double x : {5.0, 10.0, 20.0}) {
    const auto a = deviation_approx(w, t3, x);
    CHECK(a.total == a.gaussian_term + a.tail_term);
    CHECK(a.zone == classify_zone(x, w, 3.0));
    CHECK(a.gaussian_term == std_normal_sf(x));
    const double ratio = a.gaussian_term / a.tail_term;
    CHECK(ratio < prev_ratio);
    prev_ratio = ratio;
  }
  CHECK(prev_ratio < 1e-60);
  const auto a = deviation_approx(w, t3, 10.0);
  CHECK(a.total == Approx(asymptotic_approx(w, t3, 10.0)).epsilon(0.05));
  CHECK_THROWS_AS(deviation_approx(w, t3, 0.0), DomainError);
}

TEST_CASE("iid weights reproduce the classical i.i.d. approximation") {
  const StudentT t4(4.0);
  const std::size_t n = 777;
  const auto c = iid_weights(n);
  const double sn = std::sqrt(t4.sigma2() * n);
  for (double x : {0.3, 1.0, 2.5, 4.0, 9.0}) {
    const auto a = deviation_approx(c, t4, x);
    CHECK(a.total == Approx(std_normal_sf(x) + n * t4.survival(x * sn)).epsilon(1e-13));
  }
}

TEST_CASE("scale invariance") {
  const StudentT t3(3.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> w(30 + rep);
    for (double& v : w) v = u(rng);
    const auto c = from(w);
    const double lambda = 0.001 * std::pow(1e6, rep / 19.0);
    const auto s = c.scaled(lambda);
    CHECK(dnt(s, 3.0) == Approx(dnt(c, 3.0)).epsilon(1e-12));
    for (double x : {0.5, 2.0, 6.0}) {
      const auto a = deviation_approx(c, t3, x);
      const auto b = deviation_approx(s, t3, x);
      CHECK(b.total == Approx(a.total).epsilon(1e-12));
      CHECK(b.zone == a.zone);
    }
  }
}

TEST_CASE("Hoelder chain between power sums") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> w(2 + rep * 3);
    for (double& v : w) v = std::pow(u(rng), 1.0 + rep % 5) + 1e-9;
    const auto c = normalize_unit_variance(from(w), 1.0);
    const double p = 2.0 + 2.0 * u(rng) + 1e-6;
    const double t = p + 2.0 * u(rng) + 1e-6;
    const double dt = dnt(c, t), dp = dnt(c, p);
    CHECK(dt <= dp * (1 + 1e-12));
    CHECK(dp <= std::pow(dt, (p - 2.0) / (t - 2.0)) * (1 + 1e-12));
  }
}

TEST_CASE("D_nt halves when n quadruples for i.i.d. weights") {
  for (std::size_t n = 4; n < 100'000; n *= 4) CHECK(dnt(iid_weights(4 * n), 3.0) <= 0.5 * dnt(iid_weights(n), 3.0) * (1 + 1e-12));
}

TEST_CASE("mixed_zone_thresholds") {
  const auto c = with_log_inv_d4(2.0);  // 7 weights
  const double root = std::sqrt(std::log(7.0));
  const auto z = mixed_zone_thresholds(c, 4.0, 2.0, 1.0);
  CHECK(z.x_large == Approx(2.0 * root));
  CHECK(z.x_moderate == Approx(root));
  CHECK(z.reference_constant == Approx(std::sqrt(2.0)));
  CHECK_FALSE(z.c_large.has_value());
  for (double t : {2.5, 3.0, 5.0}) {
    const auto zi = mixed_zone_thresholds(iid_weights(1000), t, 1.5, 1.3);
    CHECK(zi.x_large == Approx(1.5 * std::sqrt((t / 2 - 1) * std::log(1000.0))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(mixed_zone_thresholds(c, 3.0, 1.4, 1.0), DomainError);
  CHECK_THROWS_AS(mixed_zone_thresholds(c, 3.0, 2.0, 1.5), DomainError);

  const auto rule = regvar_coeffs(0.9);
  const auto w4 = ma_window_coeffs(rule, 10'000, {0.05, 20'000'000});
  const auto w6 = ma_window_coeffs(rule, 1'000'000, {0.05, 200'000'000});
  const double ratio = mixed_zone_thresholds(w6, 3.0, 2.0, 1.0).x_large / mixed_zone_thresholds(w4, 3.0, 2.0, 1.0).x_large;
  CHECK(std::abs(ratio / std::sqrt(1.5) - 1.0) < 0.05);
  REQUIRE(mixed_zone_thresholds(w4, 3.0, 2.0, 1.0).c_large.has_value());
}

TEST_CASE("conservative_ld_threshold") {
  // D_n3 = e^{-2} needs e^4 equal weights; use the closed form through an equivalent array.
  const auto c = iid_weights(55);
  const double root = std::sqrt(-std::log(dnt(c, 3.0)));
  CHECK(conservative_ld_threshold(c, 3.0) == Approx(std::exp(1.5) * 5.0 / std::numbers::sqrt2 * root));
  CHECK(std::exp(1.5) * 5.0 / std::numbers::sqrt2 * std::sqrt(2.0) == Approx(22.408445).epsilon(1e-6));
  const auto w = from({1, 1, 1, 1, 1, 1, 1, 1});
  const double r25 = conservative_ld_threshold(w, 2.5) / std::sqrt(-std::log(dnt(w, 2.5)));
  const double r3 = conservative_ld_threshold(w, 3.0) / std::sqrt(-std::log(dnt(w, 3.0)));
  CHECK(r25 < r3);
  for (double t : {2.1, 3.0, 6.0}) CHECK(conservative_ld_threshold(w, t) > mixed_zone_thresholds(w, t, std::numbers::sqrt2 + 1e-12, 1.0).x_large);
}

TEST_CASE("md_threshold_frolov") {
  for (double p : {2.5, 3.0, 4.0}) {
    for (std::size_t n : {10u, 100u, 5000u})
      CHECK(md_threshold_frolov(iid_weights(n), p) == Approx(std::sqrt((p - 2.0) * std::log(double(n)))).epsilon(1e-12));
  }
  CHECK(md_threshold_frolov(iid_weights(100), 4.0) == Approx(std::sqrt(4.0 * std::log(10.0))).epsilon(1e-12));
  CHECK(md_threshold_frolov(iid_weights(100), 2.2) < md_threshold_frolov(iid_weights(100), 3.0));
  CHECK_THROWS_AS(md_threshold_frolov(from({1.0}), 3.0), DomainError);
}

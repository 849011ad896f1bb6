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
#include <vector>

#include "lindev/coefficients.hpp"
#include "lindev/deviation.hpp"
#include "lindev/error.hpp"
#include "lindev/innovation.hpp"
#include "lindev/oracle.hpp"

using namespace lindev;
using doctest::Approx;

namespace {

CoefficientArray from(std::vector<double> w) { return {1, std::move(w), 0.0, {"test", {}}}; }

const CoefficientArray& fig_coeffs() {
  static const auto c = ma_window_coeffs(regvar_coeffs(0.9), 300, {1e-2, 10'000'000});
  return c;
}

// P(t3 > x), closed form
double t3_sf(double x) {
  const double u = x / std::sqrt(3.0);
  return 0.5 - (std::atan(u) + u / (1.0 + u * u)) / std::numbers::pi;
}

}  // namespace

TEST_CASE("student_t_cf") {
  CHECK(student_t_cf(3.0, 0.0) == 1.0);
  CHECK(student_t_cf(3.0, 1.0) == Approx(0.48335772459650765).epsilon(1e-13));
  CHECK(student_t_cf(5.0, 1.3) == Approx(0.36741204119148096).epsilon(1e-13));
  for (double y : {0.01, 0.4, 2.0, 9.0}) {
    CHECK(student_t_cf(3.0, y) == Approx((1 + std::sqrt(3.0) * y) * std::exp(-std::sqrt(3.0) * y)).epsilon(1e-12));
    CHECK(student_t_cf(4.5, -y) == student_t_cf(4.5, y));
    CHECK(student_t_cf(4.5, y) > 0.0);
    CHECK(student_t_cf(4.5, y) <= 1.0);
    CHECK(std::exp(student_t_log_cf(4.5, y)) == Approx(student_t_cf(4.5, y)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(student_t_cf(0.0, 1.0), DomainError);
}

TEST_CASE("sum_cf") {
  CHECK(sum_cf(fig_coeffs(), 3.0, 0.0) == 1.0);
  CHECK(sum_cf(from({1.0}), 3.0, 0.7) == Approx(student_t_cf(3.0, 0.7)).epsilon(1e-14));
  const double c = 0.37;
  CHECK(sum_cf(from({c, c}), 4.0, 2.1) == Approx(std::pow(student_t_cf(4.0, c * 2.1), 2)).epsilon(1e-13));
  const auto& w = fig_coeffs();
  for (double y : {1e-4, 1e-3, 1e-2}) CHECK(sum_cf(w, 3.0, y) <= student_t_cf(3.0, w.max_weight() * y));
  // deep underflow stays finite in the log domain
  CHECK(sum_cf(w, 3.0, 10.0) == 0.0);
  CHECK(std::isfinite(sum_log_cf(w, 3.0, 10.0)));
}

TEST_CASE("cf inversion reproduces the t3 survival function") {
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    const auto e = cf_invert_tail(from({1.0}), 3.0, x);
    CHECK(std::abs(e.value - t3_sf(x)) < 1e-6);
    CHECK(e.error >= 0.0);
    CHECK(e.method == OracleMethod::CFInversion);
  }
  CHECK(cf_invert_tail(from({1.0}), 3.0, 1.0).value == Approx(0.195501).epsilon(1e-5));
  CHECK(cf_invert_tail(from({1.0}), 3.0, 1e-9).value == Approx(0.5).epsilon(1e-6));
}

TEST_CASE("cf inversion argument checks") {
  CHECK_THROWS_AS(cf_invert_tail(from({1.0}), 3.0, 0.0), DomainError);
  CHECK_THROWS_AS(cf_invert_tail(from({1.0}), 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(cf_invert_tail(from({0.0}), 3.0, 1.0), DegenerateError);
  CHECK_THROWS_AS(cf_invert_tail(fig_coeffs(), 3.0, 1.0, {1e-14, 3}), ConvergenceError);
}

TEST_CASE("cf inversion tail is monotone") {
  const auto& w = fig_coeffs();
  const double sn = sigma_n(w, 3.0);
  OracleEstimate prev = cf_invert_tail(w, 3.0, 0.05 * sn);
  for (int k = 1; k < 25; ++k) {
    const auto e = cf_invert_tail(w, 3.0, 0.05 * sn * std::pow(200.0, k / 24.0));
    CHECK(e.value >= 0.0);
    CHECK(e.value <= 1.0);
    CHECK(e.value <= prev.value + 2.0 * (e.error + prev.error));
    prev = e;
  }
}

TEST_CASE("cf inversion agrees with Monte Carlo") {
  const auto& w = fig_coeffs();
  const StudentT t3(3.0);
  const double sn = sigma_n(w, 3.0);
  const std::vector<double> xs{sn, 3.0 * sn};
  const auto mc = monte_carlo_tail(w, t3, xs, {200'000, 2024, 16, 0});
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const auto cf = cf_invert_tail(w, 3.0, xs[k]);
    INFO("x " << xs[k] << " cf " << cf.value << " mc " << mc[k].value);
    CHECK(std::abs(cf.value - mc[k].value) <= 3.0 * std::hypot(cf.error, mc[k].error));
  }
}

TEST_CASE("monte_carlo_tail basics") {
  const UniformInnovation u(1.0);
  const auto w = iid_weights(20);
  CHECK(monte_carlo_tail(w, u, -1e9, {5000, 3, 4, 1}).value == 1.0);
  const auto half = monte_carlo_tail(w, StudentT(3.0), 0.0, {100'000, 9, 8, 0});
  CHECK(std::abs(half.value - 0.5) <= 3.0 * half.error);
  CHECK(half.method == OracleMethod::MonteCarlo);
  CHECK(half.error == Approx(std::sqrt(half.value * (1 - half.value) / 100'000)));
  CHECK_THROWS_AS(monte_carlo_tail(w, u, 0.0, {0, 1, 4, 0}), DomainError);
}

TEST_CASE("monte carlo is a function of seed and streams only") {
  const auto& w = fig_coeffs();
  const StudentT t3(3.0);
  const std::vector<double> xs{10.0, 100.0, 300.0};
  const auto a = monte_carlo_tail(w, t3, xs, {20'000, 77, 8, 1});
  const auto b = monte_carlo_tail(w, t3, xs, {20'000, 77, 8, 4});
  const auto c = monte_carlo_tail(w, t3, xs, {20'000, 77, 8, 0});
  for (std::size_t k = 0; k < xs.size(); ++k) {
    CHECK(a[k].value == b[k].value);
    CHECK(a[k].value == c[k].value);
  }
  const auto d = monte_carlo_tail(w, t3, xs, {20'000, 78, 8, 1});
  CHECK(d[0].value != a[0].value);

  const auto ca = conditional_mc_tail(w, t3, xs, {5'000, 77, 8, 1});
  const auto cb = conditional_mc_tail(w, t3, xs, {5'000, 77, 8, 3});
  for (std::size_t k = 0; k < xs.size(); ++k) CHECK(ca[k].value == cb[k].value);
}

TEST_CASE("stream shares cover all samples") {
  for (std::size_t n : {1u, 7u, 1000u, 1001u}) {
    std::size_t total = 0;
    for (std::size_t s = 0; s < 16; ++s) total += detail::stream_share(n, 16, s);
    CHECK(total == n);
  }
}

TEST_CASE("conditional Monte Carlo is unbiased") {
  const auto w = iid_weights(50);
  const StudentT t3(3.0);
  const double sn = sigma_n(w, 3.0);
  const std::vector<double> xs{1.0 * sn, 2.0 * sn, 4.0 * sn};
  const auto cmc = conditional_mc_tail(w, t3, xs, {100'000, 5, 16, 0});
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const auto cf = cf_invert_tail(w, 3.0, xs[k]);
    INFO("x " << xs[k] << " cf " << cf.value << " cmc " << cmc[k].value);
    CHECK(cmc[k].method == OracleMethod::ConditionalMonteCarlo);
    CHECK(std::abs(cf.value - cmc[k].value) <= 4.0 * std::hypot(cf.error, cmc[k].error));
  }
}

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
#include <limits>
#include <vector>

#include "lindev/coefficients.hpp"
#include "lindev/deviation.hpp"
#include "lindev/error.hpp"
#include "lindev/innovation.hpp"
#include "lindev/oracle.hpp"
#include "lindev/risk.hpp"
#include "lindev/special_math.hpp"

using namespace lindev;
using doctest::Approx;

namespace {

// Unit variance, P(xi >= x) = h0 x^{-3} for x >= 1. Only the tail fields matter here.
class PowerTail final : public InnovationModel {
 public:
  explicit PowerTail(double h0) : InnovationModel(1.0, 3.0, h0, 2.5, false) {}
  std::string name() const override { return "power-tail"; }
  double survival(double x) const override { return x <= 1.0 ? 1.0 : tail_constant() / (x * x * x); }
  double cdf(double x) const override { return 1.0 - survival(x); }
  void sample(Rng&, std::span<double>) const override { throw Error("not used"); }
};

CoefficientArray from(std::vector<double> w) { return {1, std::move(w), 0.0, {"test", {}}}; }

// eight weights of 1/2: B_n3 = 1
CoefficientArray unit_b3() { return from(std::vector<double>(8, 0.5)); }

const CoefficientArray& fig_coeffs() {
  static const auto c = ma_window_coeffs(regvar_coeffs(0.9), 300, {1e-2, 10'000'000});
  return c;
}

}  // namespace

TEST_CASE("closed form quantile") {
  const PowerTail m(1.0);
  const auto r = var_closed_form(unit_b3(), m, 1e-3);
  CHECK(r.method == RiskMethod::ClosedFormTail);
  CHECK(r.var_quantile == Approx(10.0).epsilon(1e-13));
  CHECK(r.var_x * sigma_n(unit_b3(), 1.0) == Approx(r.var_quantile));

  auto doubled = from(std::vector<double>(16, 0.5));  // B_n3 = 2
  CHECK(var_closed_form(doubled, m, 1e-3).var_quantile == Approx(10.0 * std::cbrt(2.0)).epsilon(1e-13));
  CHECK_THROWS_AS(var_closed_form(unit_b3(), m, 0.2), RegimeError);
}

TEST_CASE("expected_shortfall") {
  RiskReport r;
  r.var_quantile = 1.5;
  CHECK(expected_shortfall(r, 3.0) == Approx(2.25));
  for (double q : {0.1, 3.0, 700.0}) {
    r.var_quantile = q;
    CHECK(expected_shortfall(r, 3.0) / q == Approx(1.5).epsilon(1e-15));
  }
  r.var_quantile = 1.0;
  CHECK(expected_shortfall(r, 1e9) == Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(expected_shortfall(r, 2.0), DomainError);
  const PowerTail m(1.0);
  CHECK(expected_shortfall_closed_form(unit_b3(), m, 1e-3) == Approx(15.0).epsilon(1e-13));
}

TEST_CASE("var_solve without a power tail is the Gaussian quantile") {
  const PowerTail none(0.0);
  for (double alpha : {1e-6, 1e-3, 0.1})
    CHECK(var_solve(unit_b3(), none, alpha).var_x == Approx(std_normal_quantile(1.0 - alpha)).epsilon(1e-14));
}

TEST_CASE("var_solve lies between the single-term solutions") {
  const auto c = iid_weights(400);  // D_n3 = 0.05
  const double d = dnt(c, 3.0);
  const double xg = 3.0;
  const double alpha = 2.0 * std_normal_sf(xg);
  // choose h0 so the tail term also equals alpha/2 at xg
  const PowerTail tuned(0.5 * alpha * xg * xg * xg / d);
  const auto r = var_solve(c, tuned, alpha);
  const double x_gauss = std_normal_quantile(1.0 - alpha);
  const double x_tail = std::cbrt(tuned.tail_constant() * d / alpha);
  CHECK(r.var_x == Approx(xg).epsilon(1e-10));
  CHECK(r.var_x > std::max(x_gauss, x_tail));
}

TEST_CASE("var_solve residual and monotonicity") {
  const StudentT t3(3.0);
  const auto& w = fig_coeffs();
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 10; ++k) {
    const double alpha = 1e-8 * std::pow(1e6, k / 9.0);
    const auto r = var_solve(w, t3, alpha);
    CHECK(std::abs(r.residual) <= 1e-10 * alpha);
    CHECK(r.var_x < prev);
    CHECK(r.es >= r.var_quantile);
    prev = r.var_x;
  }
  CHECK_THROWS_AS(var_solve(w, t3, 0.5), DomainError);
  CHECK_THROWS_AS(var_solve(w, t3, 0.0), DomainError);
}

TEST_CASE("closed form and root solve agree in the pure tail regime") {
  const StudentT t3(3.0);
  const auto& w = fig_coeffs();
  for (double alpha : {1e-6, 1e-7, 1e-8}) {
    const auto s = var_solve(w, t3, alpha);
    const auto c = var_closed_form(w, t3, alpha);
    CHECK(std::abs(c.var_x / s.var_x - 1.0) < 0.05);
    CHECK_FALSE(s.es_outside_regime);
  }
  CHECK(std::abs(var_closed_form(w, t3, 1e-8).var_x / var_solve(w, t3, 1e-8).var_x - 1.0) < 0.02);
  // at the default alpha the closed form is not applicable
  CHECK_THROWS_AS(var_closed_form(w, t3, 1e-3), RegimeError);
}

TEST_CASE("quantile exceedance in the pure tail regime") {
  const StudentT t3(3.0);
  const auto& w = fig_coeffs();
  for (double alpha : {1e-6, 1e-8}) {
    const auto r = var_solve(w, t3, alpha);
    const auto p = cf_invert_tail(w, 3.0, r.var_quantile, {1e-3 * alpha, 1'000'000});
    CHECK(p.value / alpha > 0.8);
    CHECK(p.value / alpha < 1.25);
  }
}

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

#include "lindev/bounds.hpp"
#include "lindev/coefficients.hpp"
#include "lindev/deviation.hpp"
#include "lindev/error.hpp"
#include "lindev/innovation.hpp"

using namespace lindev;
using doctest::Approx;

namespace {

CoefficientArray from(std::vector<double> w) { return {1, std::move(w), 0.0, {"test", {}}}; }

double t3_density(double u) { return 6.0 * std::sqrt(3.0) / (std::numbers::pi * std::pow(3.0 + u * u, 2)); }

// composite Simpson, independent of the library quadrature
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

// P(xi > u) = 0 for u > 0
class NonPositive final : public InnovationModel {
 public:
  NonPositive() : InnovationModel(1.0, 3.0, 0.0, 2.5, false) {}
  std::string name() const override { return "nonpositive"; }
  double survival(double x) const override { return x <= -1.0 ? 1.0 : (x <= 0.0 ? -x : 0.0); }
  double cdf(double x) const override { return 1.0 - survival(x); }
  void sample(Rng&, std::span<double>) const override { throw Error("not used"); }
};

}  // namespace

TEST_CASE("fuk_nagaev_bound") {
  const double v = fuk_nagaev_bound({2.0, 4.0, 1.0, 1.0, 1.0});
  CHECK(v == Approx(1.0128677692336272).epsilon(1e-14));
  CHECK(v == Approx(std::exp(-2.0 / std::exp(2.0)) + 0.25).epsilon(1e-14));
  CHECK(fuk_nagaev_bound({2.0, 4.0, 1.0, 0.0, 1.0}) == Approx(std::exp(-2.0 / std::exp(2.0))).epsilon(1e-14));
  CHECK(fuk_nagaev_bound({3.0, 1e4, 1.0, 1.0, 1.0}) < 1e-100);
  CHECK(fuk_nagaev_bound({2.0, 4.0, 1.0, 1.0, 0.0}) == Approx(0.25));
  CHECK_THROWS_AS(fuk_nagaev_bound({2.0, 0.0, 1.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(fuk_nagaev_bound({2.0, 1.0, 0.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(fuk_nagaev_bound({1.5, 1.0, 1.0, 1.0, 1.0}), DomainError);
}

TEST_CASE("fuk_nagaev_bound monotonicity on random inputs") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    FukNagaevInputs in{2.0 + 4.0 * u(rng), 0.1 + 10.0 * u(rng), 0.1 + 5.0 * u(rng), 5.0 * u(rng), 0.01 + 5.0 * u(rng)};
    const double b = fuk_nagaev_bound(in);
    // In x only where the polynomial term has base <= 1; otherwise the
    // bound exceeds 1 and can grow with x.
    const double beta = in.m / (in.m + 2.0);
    if (in.A_n <= beta * in.x * std::pow(in.y, in.m - 1.0)) {
      auto bx = in;
      bx.x *= 1.0 + u(rng);
      CHECK(fuk_nagaev_bound(bx) <= b * (1 + 1e-12));
    }
    auto ba = in;
    ba.A_n *= 1.0 + u(rng);
    CHECK(fuk_nagaev_bound(ba) >= b * (1 - 1e-12));
    auto bb = in;
    bb.B_n2 *= 1.0 + u(rng);
    CHECK(fuk_nagaev_bound(bb) >= b * (1 - 1e-12));
  }
}

TEST_CASE("truncated moments of t3") {
  const StudentT t3(3.0);
  CHECK(truncated_positive_moment(t3, 4.0, 10.0) == Approx(21.535441892711115).epsilon(1e-9));
  CHECK(truncated_positive_moment(t3, 2.5, INFINITY) == Approx(4.1877218659594481).epsilon(1e-9));
  CHECK(truncated_positive_moment(t3, 2.0, 10.0) == Approx(1.1756449380598786).epsilon(1e-9));
  CHECK(lower_second_moment(t3, 2.0) == Approx(1.1541242021327654).epsilon(1e-9));
  CHECK(lower_second_moment(t3, 0.0) == Approx(1.5).epsilon(1e-9));
  const double direct = simpson([](double u) { return std::pow(u, 4) * t3_density(u); }, 0.0, 10.0, 20'000);
  CHECK(std::abs(truncated_positive_moment(t3, 4.0, 10.0) - direct) < 1e-6);
  CHECK_THROWS_AS(truncated_positive_moment(t3, 3.0, INFINITY), DomainError);
}

TEST_CASE("fuk_nagaev_for_model") {
  const StudentT t3(3.0);
  const auto e = fuk_nagaev_for_model(from({1.0}), t3, 4.0, 20.0, 10.0);
  CHECK(e.inputs.A_n == Approx(21.535441892711115).epsilon(1e-9));
  CHECK(e.inputs.B_n2 == Approx(1.5 + 1.1756449380598786).epsilon(1e-9));
  CHECK(e.bound == Approx(fuk_nagaev_bound(e.inputs)).epsilon(1e-15));

  const auto two = fuk_nagaev_for_model(from({0.5, 2.0}), t3, 3.0, 5.0, 1.5);
  const double a = std::pow(0.5, 3) * truncated_positive_moment(t3, 3.0, 3.0) + 8.0 * truncated_positive_moment(t3, 3.0, 0.75);
  CHECK(two.inputs.A_n == Approx(a).epsilon(1e-9));

  const NonPositive np;
  CHECK(fuk_nagaev_for_model(from({1.0, 2.0}), np, 3.0, 1.0, 1.0).inputs.A_n == 0.0);
}

TEST_CASE("Fuk-Nagaev bound dominates the simulated truncated sum") {
  const StudentT t3(3.0);
  const auto w = ma_window_coeffs(regvar_coeffs(0.9), 300, {1e-2, 10'000'000});
  const double sn = sigma_n(w, 3.0);
  for (double k : {2.0, 4.0}) {
    const double x = k * sn;
    const double y = x / 2.0;
    const auto fn = fuk_nagaev_for_model(w, t3, 4.0, x, y);
    const auto mc = truncated_sum_tail_mc(w, t3, x, y, {100'000, 31, 16, 0});
    INFO("x " << x << " bound " << fn.bound << " mc " << mc.value);
    CHECK(fn.bound >= mc.value - 3.0 * mc.error);
  }
}

TEST_CASE("frolov_quantities") {
  const StudentT t3(3.0);
  const double p = 2.5;
  const double e_plus = truncated_positive_moment(t3, p, INFINITY);
  for (std::size_t n : {50u, 400u}) {
    const auto c = normalize_unit_variance(iid_weights(n), t3.sigma2());
    const auto f = frolov_quantities(c, t3, 1.0, p, 0.1);
    CHECK(f.L_np == Approx(std::pow(double(n), 1.0 - p / 2.0) * e_plus / std::pow(3.0, p / 2.0)).epsilon(1e-9));
    CHECK(f.lambda >= 0.0);
  }
  const auto c = iid_weights(100);
  CHECK(frolov_quantities(c, t3, 0.0, p, 0.1).lambda == 0.0);

  const auto w = ma_window_coeffs(regvar_coeffs(0.9), 300, {1e-2, 10'000'000});
  const double x = md_threshold_frolov(w, p);
  CHECK(frolov_quantities(w, t3, x, p, 0.1).zone_stat < 0.0);
  CHECK_THROWS_AS(frolov_quantities(from({1.0}), t3, 1.0, p, 0.1), DomainError);
}

TEST_CASE("frolov_lambda monotonicity") {
  const StudentT t3(3.0);
  const auto c = iid_weights(30);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int rep = 0; rep < 40; ++rep) {
    const double uu = u(rng), s = u(rng), eps = u(rng);
    const double base = frolov_lambda(c, t3, uu, s, eps);
    CHECK(base >= 0.0);
    CHECK(frolov_lambda(c, t3, 1.5 * uu, s, eps) >= base);
    CHECK(frolov_lambda(c, t3, uu, 1.5 * s, eps) >= base * (1 - 1e-9));
    CHECK(frolov_lambda(c, t3, uu, s, 1.5 * eps) <= base * (1 + 1e-9));
  }
}

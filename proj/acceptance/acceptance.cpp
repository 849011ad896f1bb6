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
// Acceptance checks. Prints one line per criterion:
//   criterion N: PASS|FAIL <detail> (<seconds>s)
// With an argument, runs only that criterion. Exit status is nonzero if any
// selected criterion fails.
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lindev/bounds.hpp"
#include "lindev/coefficients.hpp"
#include "lindev/deviation.hpp"
#include "lindev/functionals.hpp"
#include "lindev/innovation.hpp"
#include "lindev/oracle.hpp"
#include "lindev/risk.hpp"
#include "lindev/study.hpp"

#ifndef LINDEV_CLI_PATH
#error "LINDEV_CLI_PATH must name the lindev-cli executable"
#endif

using namespace lindev;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const CoefficientArray& study_coeffs() {
  static const auto c = ma_window_coeffs(regvar_coeffs(0.9), 300, {StudyConfig{}.trunc_tol, StudyConfig{}.index_cap});
  return c;
}

double t3_sf(double x) {
  const double u = x / std::sqrt(3.0);
  return 0.5 - (std::atan(u) + u / (1.0 + u * u)) / std::numbers::pi;
}

Outcome c1() {
  const CoefficientArray one{1, {1.0}, 0.0, {"unit", {}}};
  double worst = 0.0;
  for (double x : {0.5, 1.0, 2.0, 5.0}) worst = std::max(worst, std::abs(cf_invert_tail(one, 3.0, x).value - t3_sf(x)));
  return {worst <= 1e-6, "max abs error " + fmt("%.3g", worst)};
}

Outcome c2() {
  const auto& w = study_coeffs();
  const StudentT t3(3.0);
  const double sn = sigma_n(w, t3.sigma2());
  std::vector<double> xs;
  for (int k = 0; k < 10; ++k) xs.push_back(sn * 0.25 * std::pow(24.0, k / 9.0));
  const auto mc = monte_carlo_tail(w, t3, xs, {1'000'000, 1, 16, 0});
  double worst = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const auto cf = cf_invert_tail(w, 3.0, xs[k]);
    worst = std::max(worst, std::abs(cf.value - mc[k].value) / std::hypot(cf.error, mc[k].error));
  }
  return {worst <= 3.0, "max |cf - mc| / combined se " + fmt("%.3f", worst)};
}

Outcome c3() {
  std::stringstream csv(run_figure1(StudyConfig{}));
  std::string line;
  std::getline(csv, line);
  bool ok = true;
  double g_small_lo = 1e9, g_small_hi = -1e9, r_lo = 1e9, r_hi = -1e9, g_large = -1e9;
  while (std::getline(csv, line)) {
    std::vector<double> v;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) v.push_back(std::atof(cell.c_str()));
    // x, x_over_sigma_n, P_oracle, oracle_err, oracle, R, g, ...
    const double xs = v[1], R = v[5], g = v[6];
    if (xs <= 0.5) {
      g_small_lo = std::min(g_small_lo, g);
      g_small_hi = std::max(g_small_hi, g);
      ok = ok && g >= 0.9 && g <= 1.1;
    }
    if (xs >= 6.0) {
      r_lo = std::min(r_lo, R);
      r_hi = std::max(r_hi, R);
      g_large = std::max(g_large, g);
      ok = ok && R >= 0.75 && R <= 1.25 && g < 0.5;
    }
  }
  return {ok, "small x: g in [" + fmt("%.4f", g_small_lo) + ", " + fmt("%.4f", g_small_hi) + "]; large x: R in [" +
                  fmt("%.4f", r_lo) + ", " + fmt("%.4f", r_hi) + "], max g " + fmt("%.3g", g_large)};
}

Outcome c4() {
  const auto w = iid_weights(10'000);
  const StudentT t3(3.0);
  const double sn = sigma_n(w, t3.sigma2());
  const std::vector<double> xs{1.5, 6.0};
  const std::vector<double> levels{1.5 * sn, 6.0 * sn};
  const auto est = conditional_mc_tail(w, t3, levels, {1'000'000, 1, 16, 0});
  bool ok = true;
  std::string detail;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double ratio = est[k].value / deviation_approx(w, t3, xs[k]).total;
    ok = ok && ratio >= 0.8 && ratio <= 1.2;
    detail += "x=" + fmt("%g", xs[k]) + " ratio " + fmt("%.4f", ratio) + " (se " + fmt("%.4f", ratio * est[k].error / est[k].value) + ") ";
  }
  return {ok, detail};
}

Outcome c5() {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t violations = 0, checks = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> w(2 + rep * 5);
    for (double& v : w) v = std::pow(u(rng), 1.0 + rep % 7);
    w[0] = std::max(w[0], 1e-3);
    const auto c = normalize_unit_variance(CoefficientArray{1, w, 0.0, {"random", {}}}, 1.0);
    for (auto [p, t] : {std::pair{2.5, 3.0}, std::pair{3.0, 4.0}}) {
      const double dt = dnt(c, t), dp = dnt(c, p);
      violations += !(dt <= dp * (1 + 1e-12)) + !(dp <= std::pow(dt, (p - 2.0) / (t - 2.0)) * (1 + 1e-12));
      checks += 2;
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(checks) + " inequalities"};
}

// c_r = int_0^inf [x^{1-r} - max(x-1,0)^{1-r}]^2 dx / (1-r)^2
double c_r(double r) {
  const double a = 1.0 - r;
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const double head = ts.integrate([a](double x) { return std::pow(x, 2 * a); }, 0.0, 1.0);
  // x^a - (x-1)^a = -x^a expm1(a log1p(-1/x)), without cancellation
  const double tail = es.integrate(
      [a](double u) {
        const double x = 1.0 + u;
        const double d = -std::pow(x, a) * std::expm1(a * std::log1p(-1.0 / x));
        return d * d;
      },
      0.0, std::numeric_limits<double>::infinity());
  return (head + tail) / (a * a);
}

Outcome c6() {
  const std::size_t n = 5000;
  const double nd = static_cast<double>(n);
  bool ok = true;
  std::string detail;
  for (auto [r, tol] : {std::pair{0.6, 0.2}, std::pair{0.75, 0.05}, std::pair{0.9, 0.01}}) {
    const auto b = ma_window_coeffs(regvar_coeffs(r), n, {tol, 20'000'000});
    const double retained = power_sum(b, 2.0);
    const double past = 1.0 - static_cast<double>(b.first_index());
    // the discarded windows satisfy n a_{n+L+k} <= b <= n a_{L+k}
    const double lower = retained + nd * nd * std::pow(nd + past + 1.0, 1.0 - 2.0 * r) / (2.0 * r - 1.0);
    const double upper = retained + b.truncation_l2_bound();
    const double scale = c_r(r) * std::pow(nd, 3.0 - 2.0 * r);
    const double lo = lower / scale, hi = upper / scale;
    ok = ok && lo >= 0.95 && hi <= 1.05;
    detail += "r=" + fmt("%g", r) + " ratio in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "] ";
  }
  return {ok, detail};
}

Outcome c7() {
  int mismatches = 0;
  for (int j = 0; j < 50; ++j) {
    const double r = 0.505 + 0.49 * j / 49.0;
    double best_v = 0.5, best = chi(0.5, r);
    for (int k = 1; k < 500; ++k) {
      const double v = 0.5 + 1e-3 * k;
      if (chi(v, r) < best) {
        best = chi(v, r);
        best_v = v;
      }
    }
    mismatches += std::abs(best_v - omega_rho(r).omega) > 1e-3 + 1e-12;
  }
  const double rho = omega_rho(0.8).rho;
  const bool ok = mismatches == 0 && std::abs(rho - 0.16) <= 1e-15;
  return {ok, std::to_string(mismatches) + " argmin mismatches; rho(0.8) = " + fmt("%.17g", rho)};
}

Outcome c8() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const StudentT t3(3.0);
  int failures = 0;
  double tightest = 1e300;
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> w(5 + static_cast<std::size_t>(195 * u(rng)));
    for (double& v : w) v = 0.05 + u(rng);
    const CoefficientArray c{1, w, 0.0, {"random", {}}};
    const double sn = sigma_n(c, t3.sigma2());
    const double m = 2.0 + 4.0 * u(rng);
    const double x = sn * (0.5 + 3.5 * u(rng));
    const double y = x * (0.2 + 0.8 * u(rng));
    const double bound = fuk_nagaev_for_model(c, t3, m, x, y).bound;
    const auto mc = truncated_sum_tail_mc(c, t3, x, y, {100'000, 100 + static_cast<std::uint64_t>(rep), 16, 0});
    failures += bound < mc.value - 3.0 * mc.error;
    tightest = std::min(tightest, bound / std::max(mc.value, 1e-300));
  }
  return {failures == 0, std::to_string(failures) + " of 20 violated; smallest bound/estimate " + fmt("%.3g", tightest)};
}

Outcome c9() {
  const StudyConfig cfg;
  const auto& w = study_coeffs();
  const StudentT t3(cfg.nu);
  const double alpha = 1e-3;
  const auto rep = var_solve(w, t3, alpha);
  const auto p = cf_invert_tail(w, cfg.nu, rep.var_quantile, {cfg.quad_tol, 1'000'000});
  const double ratio = p.value / alpha;
  const double es_ratio = rep.es / rep.var_quantile;
  const bool ok = ratio >= 0.8 && ratio <= 1.25 && std::abs(es_ratio - 1.5) <= 1e-15 * 1.5;
  return {ok, "P(S_n >= VaR)/alpha = " + fmt("%.4f", ratio) + ", ES/VaR = " + fmt("%.17g", es_ratio)};
}

std::string capture(const std::string& cmd) {
  std::string out;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), got);
  if (pclose(f) != 0) out += "\n<nonzero exit>";
  return out;
}

Outcome c10() {
  const std::string cmd = std::string("\"") + LINDEV_CLI_PATH +
                          "\" figure1 --oracle both --mc-samples 50000 --x-points 10 --seed 7";
  const std::string a = capture(cmd);
  const std::string b = capture(cmd);
  const bool ok = !a.empty() && a == b && a.find("<nonzero exit>") == std::string::npos;
  return {ok, std::to_string(a.size()) + " and " + std::to_string(b.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::array<std::function<Outcome()>, 10> checks{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 10) {
      std::fprintf(stderr, "usage: %s [criterion 1-10]\n", argv[0]);
      return 2;
    }
  }
  bool all = true;
  for (int k = 1; k <= 10; ++k) {
    if (only && k != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = checks[k - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s %s (%.1fs)\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}

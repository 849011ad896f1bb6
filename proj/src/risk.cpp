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
#include "lindev/risk.hpp"

#include <cmath>
#include <string>

#include "lindev/deviation.hpp"
#include "lindev/error.hpp"
#include "lindev/special_math.hpp"

namespace lindev {

std::string_view to_string(RiskMethod m) {
  switch (m) {
    case RiskMethod::ClosedFormTail: return "closed_form_tail";
    case RiskMethod::RootSolveMixed: return "root_solve_mixed";
  }
  return "unknown";
}

namespace {

void check_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw DomainError(std::string(who) + ": alpha must lie in (0, 1/2)");
}

bool has_power_tail(const InnovationModel& model) {
  return model.tail_constant() > 0.0 && std::isfinite(model.tail_exponent());
}

}  // namespace

RiskReport var_solve(const CoefficientArray& coeffs, const InnovationModel& model, double alpha) {
  check_alpha(alpha, "var_solve");
  const double sn = sigma_n(coeffs, model.sigma2());
  if (!(sn > 0.0)) throw DegenerateError("var_solve: all weights are zero");

  RiskReport out;
  out.alpha = alpha;
  out.method = RiskMethod::RootSolveMixed;
  const double lo0 = std_normal_quantile(1.0 - alpha);

  if (!has_power_tail(model)) {
    out.var_x = lo0;
    out.var_quantile = lo0 * sn;
    out.residual = std_normal_sf(lo0) - alpha;
    out.es_outside_regime = true;
    out.es = std::isfinite(model.tail_exponent()) && model.tail_exponent() > 2.0
                 ? expected_shortfall(out, model.tail_exponent())
                 : out.var_quantile;
    return out;
  }

  const double t = model.tail_exponent();
  const double d = dnt(coeffs, t);
  if (!(d < 1.0)) throw DomainError("var_solve: D_nt >= 1");
  const double scale = model.tail_constant() * d / std::pow(std::sqrt(model.sigma2()), t);
  auto f = [&](double x) { return scale / std::pow(x, t) + std_normal_sf(x) - alpha; };

  double lo = lo0;
  double hi = std::pow(scale / alpha, 1.0 / t) * 2.0 + 10.0;
  const double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo >= 0.0 && fhi <= 0.0)) {
    throw ConvergenceError("var_solve: no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "], f = (" + std::to_string(flo) + ", " +
                           std::to_string(fhi) + ")");
  }
  while (hi - lo > 1e-12 * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) >= 0.0 ? lo : hi) = mid;
  }
  // Report whichever end has the smaller residual.
  const double flo_end = f(lo);
  const double fhi_end = f(hi);
  const bool take_lo = std::abs(flo_end) <= std::abs(fhi_end);
  out.var_x = take_lo ? lo : hi;
  out.residual = take_lo ? flo_end : fhi_end;
  out.var_quantile = out.var_x * sn;
  out.es = expected_shortfall(out, t);
  const double x_a = kDefaultTailRegimeA * std::sqrt(-std::log(d));
  out.es_outside_regime = out.var_x < x_a;
  return out;
}

RiskReport var_closed_form(const CoefficientArray& coeffs, const InnovationModel& model,
                           double alpha, double a) {
  check_alpha(alpha, "var_closed_form");
  if (!(a > std::sqrt(2.0))) throw DomainError("var_closed_form: a must exceed sqrt(2)");
  if (!has_power_tail(model))
    throw RegimeError("var_closed_form: model has no power-law tail");
  const double t = model.tail_exponent();
  const double d = dnt(coeffs, t);
  if (!(d < 1.0)) throw DomainError("var_closed_form: D_nt >= 1");
  const double sigma = std::sqrt(model.sigma2());
  const double h0 = model.tail_constant();
  const double bound = h0 * d * std::pow(a * a * sigma * sigma * -std::log(d), -0.5 * t);
  if (!(alpha <= bound)) {
    throw RegimeError("var_closed_form: alpha = " + std::to_string(alpha) +
                      " is above the pure-tail bound " + std::to_string(bound) +
                      "; use var_solve");
  }
  const double sn = sigma_n(coeffs, model.sigma2());
  RiskReport out;
  out.alpha = alpha;
  out.method = RiskMethod::ClosedFormTail;
  out.var_quantile = std::pow(h0 * power_sum(coeffs, t) / alpha, 1.0 / t);
  out.var_x = out.var_quantile / sn;
  out.residual = h0 * d / std::pow(sigma * out.var_x, t) + std_normal_sf(out.var_x) - alpha;
  out.es = expected_shortfall(out, t);
  return out;
}

double expected_shortfall(const RiskReport& report, double t) {
  if (!(t > 2.0)) throw DomainError("expected_shortfall: t must exceed 2");
  return t * report.var_quantile / (t - 1.0);
}

double expected_shortfall_closed_form(const CoefficientArray& coeffs, const InnovationModel& model,
                                      double alpha) {
  check_alpha(alpha, "expected_shortfall_closed_form");
  if (!has_power_tail(model))
    throw RegimeError("expected_shortfall_closed_form: model has no power-law tail");
  const double t = model.tail_exponent();
  return t * std::pow(model.tail_constant() * power_sum(coeffs, t) / alpha, 1.0 / t) / (t - 1.0);
}

}  // namespace lindev

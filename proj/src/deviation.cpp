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
#include "lindev/deviation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lindev/error.hpp"
#include "lindev/special_math.hpp"
#include "summation.hpp"

namespace lindev {

namespace {

double log_inv_dnt(const CoefficientArray& coeffs, double t, const char* who) {
  const double d = dnt(coeffs, t);
  if (!(d < 1.0)) {
    throw DomainError(std::string(who) + ": D_nt = " + std::to_string(d) +
                      " >= 1, no zone separation exists");
  }
  return -std::log(d);
}

}  // namespace

std::string_view to_string(Zone z) {
  switch (z) {
    case Zone::Moderate: return "moderate";
    case Zone::Boundary: return "boundary";
    case Zone::Large: return "large";
  }
  return "unknown";
}

double power_sum(const CoefficientArray& coeffs, double t) {
  NeumaierSum s;
  for (double c : coeffs.weights()) {
    if (c > 0.0) s.add(t == 2.0 ? c * c : std::pow(c, t));
  }
  return s.value();
}

double dnt(const CoefficientArray& coeffs, double t) {
  const double b2 = power_sum(coeffs, 2.0);
  if (!(b2 > 0.0)) throw DegenerateError("dnt: all weights are zero");
  // sum (c / sqrt(B_n2))^t avoids overflow for large weights.
  const double inv = 1.0 / std::sqrt(b2);
  NeumaierSum s;
  for (double c : coeffs.weights()) {
    if (c > 0.0) s.add(std::pow(c * inv, t));
  }
  return s.value();
}

double sigma_n(const CoefficientArray& coeffs, double sigma2) {
  return std::sqrt(sigma2 * power_sum(coeffs, 2.0));
}

Zone classify_zone_from_dnt(double x, double d_nt, double band) {
  if (!(d_nt < 1.0)) throw DomainError("classify_zone: D_nt >= 1, no zone separation exists");
  if (!(band >= 0.0)) throw DomainError("classify_zone: band must be nonnegative");
  const double boundary = std::sqrt(-2.0 * std::log(d_nt));
  if (x < (1.0 - band) * boundary) return Zone::Moderate;
  if (x > (1.0 + band) * boundary) return Zone::Large;
  return Zone::Boundary;
}

Zone classify_zone(double x, const CoefficientArray& coeffs, double t, double band) {
  return classify_zone_from_dnt(x, dnt(coeffs, t), band);
}

TailTerm tail_term(const CoefficientArray& coeffs, const InnovationModel& model, double x) {
  const double sn = sigma_n(coeffs, model.sigma2());
  if (!(sn > 0.0)) throw DegenerateError("tail_term: sigma_n is zero");
  const double level = x * sn;
  NeumaierSum s;
  for (double c : coeffs.weights()) {
    if (c > 0.0) s.add(model.survival(level / c));
  }
  TailTerm out;
  out.value = s.value();
  if (coeffs.truncation_l2_bound() > 0.0 && level != 0.0)
    out.truncation_error_bound = model.sigma2() * coeffs.truncation_l2_bound() / (level * level);
  return out;
}

DeviationApprox deviation_approx(const CoefficientArray& coeffs, const InnovationModel& model,
                                 double x) {
  if (!(x > 0.0)) throw DomainError("deviation_approx: x must be positive");
  DeviationApprox out;
  out.x = x;
  out.sigma_n = sigma_n(coeffs, model.sigma2());
  out.gaussian_term = std_normal_sf(x);
  out.tail_term = tail_term(coeffs, model, x).value;
  out.total = out.gaussian_term + out.tail_term;
  out.zone = classify_zone(x, coeffs, model.tail_exponent());
  return out;
}

double asymptotic_approx(const CoefficientArray& coeffs, const InnovationModel& model, double x) {
  const double t = model.tail_exponent();
  const double sigma = std::sqrt(model.sigma2());
  return std_normal_sf(x) + model.tail_constant() * dnt(coeffs, t) / std::pow(sigma * x, t);
}

ZoneThresholds mixed_zone_thresholds(const CoefficientArray& coeffs, double t, double a, double b) {
  if (!(a > std::numbers::sqrt2)) throw DomainError("mixed_zone_thresholds: a must exceed sqrt(2)");
  if (!(b > 0.0 && b < std::numbers::sqrt2))
    throw DomainError("mixed_zone_thresholds: b must lie in (0, sqrt(2))");
  const double root = std::sqrt(log_inv_dnt(coeffs, t, "mixed_zone_thresholds"));
  ZoneThresholds out;
  out.x_large = a * root;
  out.x_moderate = b * root;
  out.reference_constant = std::sqrt(std::max(t - 2.0, 0.0));
  const Provenance& prov = coeffs.provenance();
  if (prov.generator.rfind("ma_window", 0) == 0 && prov.has("n")) {
    const double ln_n = std::log(prov.param("n", 1.0));
    if (ln_n > 0.0) {
      out.c_large = out.x_large / std::sqrt(ln_n);
      out.c_moderate = out.x_moderate / std::sqrt(ln_n);
    }
  }
  return out;
}

double conservative_ld_threshold(const CoefficientArray& coeffs, double t) {
  if (!(t > 2.0)) throw DomainError("conservative_ld_threshold: t must exceed 2");
  const double root = std::sqrt(log_inv_dnt(coeffs, t, "conservative_ld_threshold"));
  return std::exp(0.5 * t) * (t + 2.0) / std::numbers::sqrt2 * root;
}

double md_threshold_frolov(const CoefficientArray& coeffs, double p) {
  if (!(p > 2.0)) throw DomainError("md_threshold_frolov: p must exceed 2");
  return std::sqrt(2.0 * log_inv_dnt(coeffs, p, "md_threshold_frolov"));
}

}  // namespace lindev

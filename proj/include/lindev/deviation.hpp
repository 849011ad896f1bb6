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
#pragma once

#include <optional>
#include <string_view>

#include "lindev/coefficients.hpp"
#include "lindev/innovation.hpp"

namespace lindev {

enum class Zone { Moderate, Boundary, Large };
std::string_view to_string(Zone z);

constexpr double kDefaultZoneBand = 0.05;

/// B_nt = sum c_ni^t over retained weights (zeros contribute nothing).
double power_sum(const CoefficientArray& coeffs, double t);

/// D_nt = B_n2^{-t/2} B_nt. Scale free. Throws DegenerateError if all
/// weights vanish.
double dnt(const CoefficientArray& coeffs, double t);

/// sigma_n = sqrt(sigma2 * B_n2).
double sigma_n(const CoefficientArray& coeffs, double sigma2);

/// Zone of the normalized level x relative to the boundary
/// sqrt(2 ln(1/D_nt)), with a relative half-width `band` around it.
/// Throws DomainError if D_nt >= 1.
Zone classify_zone(double x, const CoefficientArray& coeffs, double t,
                   double band = kDefaultZoneBand);
Zone classify_zone_from_dnt(double x, double d_nt, double band = kDefaultZoneBand);

struct TailTerm {
  double value = 0.0;
  /// Chebyshev bound sigma2 * truncation_l2_bound / (x sigma_n)^2 on the
  /// contribution of discarded weights.
  double truncation_error_bound = 0.0;
};

/// sum_i P(c_ni xi >= x sigma_n) with the model's exact survival function.
TailTerm tail_term(const CoefficientArray& coeffs, const InnovationModel& model, double x);

struct DeviationApprox {
  double x = 0.0;
  double gaussian_term = 0.0;
  double tail_term = 0.0;
  double total = 0.0;
  Zone zone = Zone::Boundary;
  double sigma_n = 0.0;
};

/// N_n(x) = (1 - Phi(x)) + sum_i P(c_ni xi >= x sigma_n).
DeviationApprox deviation_approx(const CoefficientArray& coeffs, const InnovationModel& model,
                                 double x);

/// (1 - Phi(x)) + h0 D_nt / (sigma x)^t, the constant-h form of N_n(x).
double asymptotic_approx(const CoefficientArray& coeffs, const InnovationModel& model, double x);

struct ZoneThresholds {
  double x_large = 0.0;     // a (ln 1/D_nt)^{1/2}
  double x_moderate = 0.0;  // b (ln 1/D_nt)^{1/2}
  /// For window coefficients with known n: the same thresholds divided by
  /// (ln n)^{1/2}, to compare against (t-2)^{1/2}.
  std::optional<double> c_large;
  std::optional<double> c_moderate;
  double reference_constant = 0.0;  // (t-2)^{1/2}
};

/// Requires a > sqrt(2) > b > 0 and D_nt < 1.
ZoneThresholds mixed_zone_thresholds(const CoefficientArray& coeffs, double t, double a, double b);

/// e^{t/2} (t+2) / sqrt(2) * (ln 1/D_nt)^{1/2}: the level beyond which the
/// heavy-tail approximation holds without a p-th moment.
double conservative_ld_threshold(const CoefficientArray& coeffs, double t);

/// (2 ln 1/D_np)^{1/2}: the Gaussian approximation holds below this level.
double md_threshold_frolov(const CoefficientArray& coeffs, double p);

}  // namespace lindev

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

#include <string_view>

#include "lindev/coefficients.hpp"
#include "lindev/innovation.hpp"

namespace lindev {

enum class RiskMethod { ClosedFormTail, RootSolveMixed };
std::string_view to_string(RiskMethod m);

/// Asymptotic VaR and ES of S_n at tail level alpha.
struct RiskReport {
  double alpha = 0.0;
  double var_x = 0.0;         // level in sigma_n units
  double var_quantile = 0.0;  // var_x * sigma_n
  double es = 0.0;
  RiskMethod method = RiskMethod::RootSolveMixed;
  /// h0 D_nt / (sigma x)^t + (1 - Phi(x)) - alpha at x = var_x.
  double residual = 0.0;
  /// The ES formula is derived for the pure-tail regime only.
  bool es_outside_regime = false;
};

/// Default constant a > sqrt(2) for the pure-tail regime check.
constexpr double kDefaultTailRegimeA = 1.5;

/// Solves h0 D_nt / (sigma x)^t + (1 - Phi(x)) = alpha by bisection.
/// Requires 0 < alpha < 1/2. A model without a power tail (h0 = 0) gives
/// the Gaussian quantile.
RiskReport var_solve(const CoefficientArray& coeffs, const InnovationModel& model, double alpha);

/// Pure-tail closed form q = (h0 B_nt / alpha)^{1/t}. Throws RegimeError
/// unless alpha <= h0 D_nt / (sigma x_a)^t with x_a = a (ln 1/D_nt)^{1/2}.
RiskReport var_closed_form(const CoefficientArray& coeffs, const InnovationModel& model,
                           double alpha, double a = kDefaultTailRegimeA);

/// t q / (t - 1).
double expected_shortfall(const RiskReport& report, double t);

/// Fully closed-form ES, t (h0 B_nt / alpha)^{1/t} / (t - 1).
double expected_shortfall_closed_form(const CoefficientArray& coeffs, const InnovationModel& model,
                                      double alpha);

}  // namespace lindev

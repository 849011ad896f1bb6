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

#include "lindev/coefficients.hpp"
#include "lindev/innovation.hpp"
#include "lindev/oracle.hpp"

namespace lindev {

struct FukNagaevInputs {
  double m = 2.0;
  double x = 0.0;
  double y = 0.0;
  double A_n = 0.0;   // sum E[X_i^m I(0 < X_i < y)]
  double B_n2 = 0.0;  // sum E[X_i^2 I(X_i < y)]
};

/// exp(-alpha^2 x^2 / (2 e^m B_n2)) + (A_n / (beta x y^{m-1}))^{beta x / y}
/// with beta = m/(m+2), alpha = 1 - beta. Bounds
/// P(sum X_i I(X_i <= y) >= x) for independent centred X_i. Not clamped to 1.
double fuk_nagaev_bound(const FukNagaevInputs& inp);

struct FukNagaevEvaluation {
  FukNagaevInputs inputs;
  double bound = 0.0;
};

/// Evaluates A_n and B_n2 for X_i = c_i xi_i from the model's survival
/// function, then the bound. `tol` is the relative quadrature tolerance.
FukNagaevEvaluation fuk_nagaev_for_model(const CoefficientArray& coeffs,
                                         const InnovationModel& model, double m, double x,
                                         double y, double tol = 1e-10);

/// Monte Carlo estimate of P(sum c_i xi_i I(c_i xi_i <= y) >= x).
OracleEstimate truncated_sum_tail_mc(const CoefficientArray& coeffs, const InnovationModel& model,
                                     double x, double y, const MonteCarloSettings& mc);

struct FrolovQuantities {
  double L_np = 0.0;
  double lambda = 0.0;
  double zone_stat = 0.0;
};

/// For X_j = c_j xi_j: L_np = sigma_n^{-p} sum E[X_j^p I(X_j >= 0)],
/// Lambda_n(u, s, eps) = (u / sigma_n^2) sum E[X_j^2 I(X_j <= -eps sigma_n / s)]
/// at u = x^4, s = x^5, and x^2 - 2 ln(1/L_np) - (p-1) ln ln(1/L_np).
/// Throws DomainError if L_np >= 1.
FrolovQuantities frolov_quantities(const CoefficientArray& coeffs, const InnovationModel& model,
                                   double x, double p, double eps);

/// Lambda_n(u, s, eps) on its own.
double frolov_lambda(const CoefficientArray& coeffs, const InnovationModel& model, double u,
                     double s, double eps);

/// E[xi^q I(0 < xi < z)] for q >= 1 and z > 0 (z may be infinite), from
/// q int_0^z u^{q-1} P(xi > u) du - z^q P(xi >= z).
double truncated_positive_moment(const InnovationModel& model, double q, double z,
                                 double tol = 1e-10);

/// E[xi^2 I(xi <= -z)] for z >= 0, from z^2 P(xi <= -z) + int_z^inf 2u P(xi <= -u) du.
double lower_second_moment(const InnovationModel& model, double z, double tol = 1e-10);

}  // namespace lindev

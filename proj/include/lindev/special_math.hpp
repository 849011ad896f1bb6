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

// Scalar special functions. Everything here is pure and thread-safe.

namespace lindev {

/// 1 - Phi(x) for the standard normal distribution.
double std_normal_sf(double x);

/// Inverse of the standard normal distribution function. Throws DomainError
/// unless 0 < p < 1.
double std_normal_quantile(double p);

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Modified Bessel function of the second kind K_order(z), order >= 0, z > 0.
///
/// Orders within 1e-12 of a half-integer use the terminating closed form.
/// Other orders use Temme's series for z < 2 and Steed's continued fraction
/// otherwise, followed by upward recurrence in the order.
double bessel_k(double order, double z);

/// exp(z) * K_order(z); does not underflow for large z.
double bessel_k_scaled(double order, double z);

}  // namespace lindev

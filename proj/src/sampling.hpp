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

// Hot loops for the Monte Carlo oracles. sampling.cpp is built with
// aggressive vectorization, so keep everything performance critical here.

#include <cstddef>
#include <span>

#include "lindev/innovation.hpp"

namespace lindev::kernel {

/// Student-t(nu) draws. Bailey's polar transform written without rejection:
/// for W ~ U(0,1) and an independent angle theta, cos(theta) * sqrt(nu (W^{-2/nu} - 1))
/// is t(nu).
void student_t(Rng& rng, double nu, std::span<double> out);

/// Uniform(-a, a) draws.
void uniform(Rng& rng, double a, std::span<double> out);

double dot(std::span<const double> w, std::span<const double> xi);

/// sum of w[i] * xi[i] over the terms with w[i] * xi[i] <= y.
double truncated_dot(std::span<const double> w, std::span<const double> xi, double y);

struct SumMax {
  double sum;
  double max;
};
/// Sum and maximum of w[i] * xi[i] over all i except `skip`.
SumMax sum_max_except(std::span<const double> w, std::span<const double> xi, std::size_t skip);

}  // namespace lindev::kernel

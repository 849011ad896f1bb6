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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lindev/innovation.hpp"

namespace lindev {

/// chi(v, r) = v max(r - r/v, 1/2 - r, r - 1) for 1/2 <= v < 1, 1/2 < r < 1.
double chi(double v, double r);

struct OmegaRho {
  double omega = 0.0;
  double rho = 0.0;
};

/// omega(r) = argmin_v chi(v, r) in closed form (r if r >= 3/4, else
/// r / (2r - 1/2)) and rho(r) = -chi(omega(r), r).
OmegaRho omega_rho(double r);

/// How the admissible level bound for H_n scales with n.
enum class LevelReading {
  SquaredLog,  // x^2 <= c ln n
  LinearLog,   // x <= c ln n
};

struct FunctionalZone {
  double r = 0.0;
  double p = 0.0;
  double omega = 0.0;
  double rho = 0.0;
  /// min(p - 2, 2 p rho (1 - 1e-9)): the largest admissible c.
  double c_max = 0.0;
  /// 2 p rho >= p - 2: the Gaussian range matches that of S_n.
  bool full_range = false;

  /// Largest x with a Gaussian approximation for H_n at sample length n.
  double level_bound(std::size_t n, LevelReading reading = LevelReading::SquaredLog) const;
};

FunctionalZone functional_md_level(double r, double p);

struct FunctionalSimSettings {
  std::size_t nsamples = 100'000;
  std::uint64_t seed = 1;
  std::size_t streams = 16;
  unsigned threads = 0;
  /// Relative L2 tolerance for cutting the infinite past of X_i.
  double trunc_tol = 1e-3;
  std::int64_t index_cap = 2'000'000;
  LevelReading reading = LevelReading::SquaredLog;
};

struct FunctionalTailPoint {
  double x = 0.0;
  double p_hat = 0.0;
  double std_error = 0.0;
  double gaussian = 0.0;
  double ratio = 0.0;  // p_hat / gaussian
};

struct FunctionalTailResult {
  std::vector<FunctionalTailPoint> points;
  /// P(X <= tau) used for centering: exactly 1/2 for symmetric innovations
  /// with tau = 0, otherwise the pooled empirical frequency.
  double centering = 0.0;
  double sd = 0.0;  // empirical sqrt(var H_n), the normalizer
  std::size_t lag = 0;  // retained filter length minus one
};

/// Simulates H_n = sum_{i=1}^n [I(X_i <= tau) - P(X <= tau)] for the long
/// memory process X_i = sum_{m>=0} (1+m)^{-r} xi_{i-m} and estimates
/// P(H_n >= x sd(H_n)) for each x in the grid. Ties at the threshold count
/// one half. Deterministic given (seed, streams).
///
/// Every x must lie below functional_md_level(r, p).level_bound(n), with p
/// the model's moment order. Throws InsufficientSamplesError when a level
/// would see fewer than 25 expected hits.
FunctionalTailResult simulate_functional_tail(double r, std::size_t n, double tau,
                                              const InnovationModel& model,
                                              std::span<const double> x_grid,
                                              const FunctionalSimSettings& settings = {});

}  // namespace lindev

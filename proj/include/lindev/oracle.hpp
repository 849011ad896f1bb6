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
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "lindev/coefficients.hpp"
#include "lindev/innovation.hpp"

namespace lindev {

enum class OracleMethod { CFInversion, MonteCarlo, ConditionalMonteCarlo };
std::string_view to_string(OracleMethod m);

/// Estimate of P(S_n > x) with its error bar: a quadrature error bound for
/// CF inversion, one standard error for Monte Carlo.
struct OracleEstimate {
  double x = 0.0;
  double value = 0.0;
  double error = 0.0;
  OracleMethod method = OracleMethod::CFInversion;
  bool underflow = false;  // value below 1e-14; only the error bar is meaningful
};

/// Characteristic function of Student-t(nu):
/// (sqrt(nu)|y|)^{nu/2} K_{nu/2}(sqrt(nu)|y|) / (Gamma(nu/2) 2^{nu/2-1}).
double student_t_cf(double nu, double y);
double student_t_log_cf(double nu, double y);

/// prod_j phi(b_j y) over the retained weights, computed in log space.
double sum_cf(const CoefficientArray& coeffs, double nu, double y);
double sum_log_cf(const CoefficientArray& coeffs, double nu, double y);

struct QuadratureSettings {
  double tol = 1e-9;             // absolute, on the probability
  std::size_t max_panels = 1'000'000;
};

/// P(S_n > x) = 1/2 - (1/pi) int_0^inf sin(xy)/y phi_{S_n}(y) dy for
/// symmetric Student-t innovations. x is on the scale of S_n (not divided
/// by sigma_n). Throws ConvergenceError if `tol` is not met.
OracleEstimate cf_invert_tail(const CoefficientArray& coeffs, double nu, double x,
                              const QuadratureSettings& quad = {});

struct MonteCarloSettings {
  std::size_t nsamples = 100'000;
  std::uint64_t seed = 1;
  /// Results are a function of (seed, streams) only, never of `threads`.
  std::size_t streams = 16;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Counts S_n > x over nsamples draws of S_n = sum c_i xi_i. One simulation
/// serves every level in `xs`.
std::vector<OracleEstimate> monte_carlo_tail(const CoefficientArray& coeffs,
                                             const InnovationModel& model,
                                             std::span<const double> xs,
                                             const MonteCarloSettings& mc);
OracleEstimate monte_carlo_tail(const CoefficientArray& coeffs, const InnovationModel& model,
                                double x, const MonteCarloSettings& mc);

/// Conditional Monte Carlo for heavy tails: draws the index I of the largest
/// summand with probability proportional to c_I^t, and averages
/// P(c_I xi > max(M_{-I}, x - S_{-I})) / pi_I, where S_{-I} and M_{-I} are
/// the sum and maximum of the other summands. Unbiased for continuous
/// innovations, with bounded relative error in the single-big-jump regime.
std::vector<OracleEstimate> conditional_mc_tail(const CoefficientArray& coeffs,
                                                const InnovationModel& model,
                                                std::span<const double> xs,
                                                const MonteCarloSettings& mc);

namespace detail {
/// Runs fn(stream) for stream = 0..streams-1 on up to `threads` threads.
void for_each_stream(std::size_t streams, unsigned threads,
                     const std::function<void(std::size_t)>& fn);
/// RNG for one stream: mt19937_64 seeded from (seed, stream) via seed_seq.
Rng stream_rng(std::uint64_t seed, std::size_t stream);
/// Samples assigned to a stream when nsamples is split evenly.
std::size_t stream_share(std::size_t nsamples, std::size_t streams, std::size_t stream);
}  // namespace detail

}  // namespace lindev

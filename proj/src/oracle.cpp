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
#include "lindev/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "lindev/deviation.hpp"
#include "lindev/error.hpp"
#include "lindev/special_math.hpp"
#include "quadrature.hpp"
#include "sampling.hpp"
#include "summation.hpp"

namespace lindev {

std::string_view to_string(OracleMethod m) {
  switch (m) {
    case OracleMethod::CFInversion: return "cf";
    case OracleMethod::MonteCarlo: return "mc";
    case OracleMethod::ConditionalMonteCarlo: return "cmc";
  }
  return "unknown";
}

double student_t_log_cf(double nu, double y) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("student_t_cf: nu must be positive");
  const double u = std::sqrt(nu) * std::abs(y);
  if (u == 0.0) return 0.0;
  if (nu == 3.0) return std::log1p(u) - u;  // K_{3/2} closed form
  if (nu > 2.0 && u < 1e-6) return -u * u / (2.0 * (nu - 2.0));
  const double half = 0.5 * nu;
  return half * std::log(u) + std::log(bessel_k_scaled(half, u)) - u - log_gamma(half) -
         (half - 1.0) * std::numbers::ln2;
}

double student_t_cf(double nu, double y) { return std::exp(student_t_log_cf(nu, y)); }

double sum_log_cf(const CoefficientArray& coeffs, double nu, double y) {
  if (y == 0.0) return 0.0;
  double acc = 0.0;
  for (double c : coeffs.weights()) {
    if (c > 0.0) acc += student_t_log_cf(nu, c * y);
  }
  return acc;
}

double sum_cf(const CoefficientArray& coeffs, double nu, double y) {
  return std::exp(sum_log_cf(coeffs, nu, y));
}

OracleEstimate cf_invert_tail(const CoefficientArray& coeffs, double nu, double x,
                              const QuadratureSettings& quad) {
  if (!(x > 0.0)) throw DomainError("cf_invert_tail: x must be positive");
  if (!(nu > 2.0)) throw DomainError("cf_invert_tail: nu must exceed 2");
  if (!(quad.tol > 0.0)) throw DomainError("cf_invert_tail: tolerance must be positive");
  const double sn = sigma_n(coeffs, nu / (nu - 2.0));
  if (!(sn > 0.0)) throw DegenerateError("cf_invert_tail: all weights are zero");

  // Pieces are half periods of sin(xy), split further to resolve phi_{S_n}
  // on its own scale 1/sigma_n.
  const double half_period = std::numbers::pi / x;
  const double width = half_period / std::ceil(half_period / (0.5 / sn));

  // Cutoff Y: phi/y is positive and decreasing, so by the second mean value
  // theorem |(1/pi) int_Y^inf sin(xy) phi(y)/y dy| <= 2 phi(Y) / (pi x Y).
  std::vector<double> breaks{0.0};
  double cutoff_bound = 0.0;
  for (;;) {
    const double y = breaks.back() + width;
    breaks.push_back(y);
    cutoff_bound = 2.0 * sum_cf(coeffs, nu, y) / (std::numbers::pi * x * y);
    if (cutoff_bound <= 0.1 * quad.tol) break;
    if (breaks.size() > quad.max_panels) {
      throw ConvergenceError("cf_invert_tail: characteristic function did not decay within " +
                             std::to_string(quad.max_panels) + " panels");
    }
  }

  auto integrand = [&](double y) {
    if (y == 0.0) return x;
    return std::sin(x * y) / y * sum_cf(coeffs, nu, y);
  };
  const double integral_tol = 0.5 * quad.tol * std::numbers::pi;
  const quad::Result res = quad::integrate(integrand, breaks, integral_tol, quad.max_panels);

  OracleEstimate out;
  out.x = x;
  out.method = OracleMethod::CFInversion;
  out.error = res.error / std::numbers::pi + cutoff_bound;
  if (!res.converged || out.error > quad.tol) {
    throw ConvergenceError("cf_invert_tail: tolerance " + std::to_string(quad.tol) +
                           " not met at x = " + std::to_string(x) + " (error estimate " +
                           std::to_string(out.error) + ")");
  }
  out.value = std::clamp(0.5 - res.value / std::numbers::pi, 0.0, 1.0);
  out.underflow = out.value < 1e-14;
  return out;
}

namespace detail {

void for_each_stream(std::size_t streams, unsigned threads,
                     const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<unsigned>(std::min<std::size_t>(threads, streams));
  if (workers <= 1) {
    for (std::size_t s = 0; s < streams; ++s) fn(s);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t s = next++; s < streams; s = next++) {
        try {
          fn(s);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

Rng stream_rng(std::uint64_t seed, std::size_t stream) {
  const auto s = static_cast<std::uint64_t>(stream);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  return Rng(seq);
}

std::size_t stream_share(std::size_t nsamples, std::size_t streams, std::size_t stream) {
  return nsamples / streams + (stream < nsamples % streams ? 1 : 0);
}

}  // namespace detail

namespace {

std::vector<double> positive_weights(const CoefficientArray& coeffs) {
  std::vector<double> w;
  w.reserve(coeffs.size());
  for (double c : coeffs.weights())
    if (c > 0.0) w.push_back(c);
  if (w.empty()) throw DegenerateError("monte carlo: all weights are zero");
  return w;
}

void check_settings(const MonteCarloSettings& mc) {
  if (mc.nsamples == 0) throw DomainError("monte carlo: nsamples must be >= 1");
  if (mc.streams == 0) throw DomainError("monte carlo: streams must be >= 1");
}

}  // namespace

std::vector<OracleEstimate> monte_carlo_tail(const CoefficientArray& coeffs,
                                             const InnovationModel& model,
                                             std::span<const double> xs,
                                             const MonteCarloSettings& mc) {
  check_settings(mc);
  const std::vector<double> w = positive_weights(coeffs);
  std::vector<std::vector<std::uint64_t>> counts(mc.streams, std::vector<std::uint64_t>(xs.size(), 0));

  detail::for_each_stream(mc.streams, mc.threads, [&](std::size_t s) {
    Rng rng = detail::stream_rng(mc.seed, s);
    std::vector<double> xi(w.size());
    std::vector<std::uint64_t>& cnt = counts[s];
    const std::size_t share = detail::stream_share(mc.nsamples, mc.streams, s);
    for (std::size_t k = 0; k < share; ++k) {
      model.sample(rng, xi);
      const double sum = kernel::dot(w, xi);
      for (std::size_t j = 0; j < xs.size(); ++j)
        if (sum > xs[j]) ++cnt[j];
    }
  });

  std::vector<OracleEstimate> out(xs.size());
  const auto total = static_cast<double>(mc.nsamples);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    std::uint64_t hits = 0;
    for (const auto& cnt : counts) hits += cnt[j];
    const double p = static_cast<double>(hits) / total;
    out[j] = {xs[j], p, std::sqrt(p * (1.0 - p) / total), OracleMethod::MonteCarlo, false};
  }
  return out;
}

OracleEstimate monte_carlo_tail(const CoefficientArray& coeffs, const InnovationModel& model,
                                double x, const MonteCarloSettings& mc) {
  const double xs[] = {x};
  return monte_carlo_tail(coeffs, model, xs, mc).front();
}

std::vector<OracleEstimate> conditional_mc_tail(const CoefficientArray& coeffs,
                                                const InnovationModel& model,
                                                std::span<const double> xs,
                                                const MonteCarloSettings& mc) {
  check_settings(mc);
  const std::vector<double> w = positive_weights(coeffs);
  const std::size_t k = w.size();
  const double t = std::isfinite(model.tail_exponent()) ? model.tail_exponent() : 2.0;

  // Importance of each index as the big jump: pi_i proportional to c_i^t.
  std::vector<double> cumulative(k);
  std::vector<double> prob(k);
  {
    NeumaierSum total;
    for (double c : w) total.add(std::pow(c, t));
    double run = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      prob[i] = std::pow(w[i], t) / total.value();
      run += prob[i];
      cumulative[i] = run;
    }
    cumulative.back() = 1.0;
  }

  struct Moments {
    std::vector<double> sum, sum_sq;
  };
  std::vector<Moments> acc(mc.streams, Moments{std::vector<double>(xs.size(), 0.0),
                                              std::vector<double>(xs.size(), 0.0)});

  detail::for_each_stream(mc.streams, mc.threads, [&](std::size_t s) {
    Rng rng = detail::stream_rng(mc.seed, s);
    std::vector<double> xi(k);
    Moments& m = acc[s];
    const std::size_t share = detail::stream_share(mc.nsamples, mc.streams, s);
    for (std::size_t n = 0; n < share; ++n) {
      const double u = uniform01(rng);
      const auto big = static_cast<std::size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      const std::size_t jump = std::min(big, k - 1);
      model.sample(rng, xi);
      const auto [rest, rest_max] = kernel::sum_max_except(w, xi, jump);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const double need = std::max(rest_max, xs[j] - rest);
        const double z = model.survival(need / w[jump]) / prob[jump];
        m.sum[j] += z;
        m.sum_sq[j] += z * z;
      }
    }
  });

  std::vector<OracleEstimate> out(xs.size());
  const auto total = static_cast<double>(mc.nsamples);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const Moments& m : acc) {
      sum += m.sum[j];
      sum_sq += m.sum_sq[j];
    }
    const double mean = sum / total;
    const double var = std::max(0.0, sum_sq / total - mean * mean);
    out[j] = {xs[j], std::clamp(mean, 0.0, 1.0), std::sqrt(var / total),
              OracleMethod::ConditionalMonteCarlo, false};
  }
  return out;
}

}  // namespace lindev

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
#include "lindev/functionals.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <string>

#include "lindev/coefficients.hpp"
#include "lindev/error.hpp"
#include "lindev/oracle.hpp"
#include "lindev/special_math.hpp"

namespace lindev {

namespace {

void check_r(double r, const char* who) {
  if (!(r > 0.5 && r < 1.0)) throw DomainError(std::string(who) + ": r must lie in (1/2, 1)");
}

}  // namespace

double chi(double v, double r) {
  check_r(r, "chi");
  if (!(v >= 0.5 && v < 1.0)) throw DomainError("chi: v must lie in [1/2, 1)");
  return v * std::max({r - r / v, 0.5 - r, r - 1.0});
}

OmegaRho omega_rho(double r) {
  check_r(r, "omega_rho");
  OmegaRho out;
  out.omega = r >= 0.75 ? r : r / (2.0 * r - 0.5);
  out.rho = -chi(out.omega, r);
  return out;
}

double FunctionalZone::level_bound(std::size_t n, LevelReading reading) const {
  if (n < 2) throw DomainError("level_bound: n must be at least 2");
  const double c_ln_n = c_max * std::log(static_cast<double>(n));
  return reading == LevelReading::SquaredLog ? std::sqrt(c_ln_n) : c_ln_n;
}

FunctionalZone functional_md_level(double r, double p) {
  if (!(p > 2.0)) throw DomainError("functional_md_level: p must exceed 2");
  const OmegaRho w = omega_rho(r);
  FunctionalZone z;
  z.r = r;
  z.p = p;
  z.omega = w.omega;
  z.rho = w.rho;
  z.c_max = std::min(p - 2.0, 2.0 * p * w.rho * (1.0 - 1e-9));
  z.full_range = 2.0 * p * w.rho >= p - 2.0;
  return z;
}

namespace {

// FFTW's planner is not thread safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * count));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

// Circular convolution of length m with a fixed filter, via real FFTs.
// FFTW_ESTIMATE keeps the plan, and hence the rounding, reproducible.
class Convolver {
 public:
  Convolver(std::size_t m, std::span<const double> filter)
      : m_(m), real_(fftw_buffer<double>(m)), spec_(fftw_buffer<fftw_complex>(m / 2 + 1)),
        filter_spec_(m / 2 + 1) {
    {
      const std::lock_guard lock(planner_mutex());
      forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(m), real_.get(), spec_.get(), FFTW_ESTIMATE);
      backward_ = fftw_plan_dft_c2r_1d(static_cast<int>(m), spec_.get(), real_.get(), FFTW_ESTIMATE);
    }
    if (forward_ == nullptr || backward_ == nullptr) throw Error("fftw: plan creation failed");
    std::fill(real_.get(), real_.get() + m, 0.0);
    std::copy(filter.begin(), filter.end(), real_.get());
    fftw_execute(forward_);
    const double inv = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < filter_spec_.size(); ++k)
      filter_spec_[k] = std::complex<double>(spec_[k][0], spec_[k][1]) * inv;
  }
  ~Convolver() {
    const std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  Convolver(const Convolver&) = delete;
  Convolver& operator=(const Convolver&) = delete;

  /// Input buffer of length m; after run() it holds the convolution.
  double* data() { return real_.get(); }

  void run() {
    fftw_execute(forward_);
    for (std::size_t k = 0; k < filter_spec_.size(); ++k) {
      const std::complex<double> z = std::complex<double>(spec_[k][0], spec_[k][1]) * filter_spec_[k];
      spec_[k][0] = z.real();
      spec_[k][1] = z.imag();
    }
    fftw_execute(backward_);
  }

 private:
  std::size_t m_;
  FftwBuffer<double> real_;
  FftwBuffer<fftw_complex> spec_;
  std::vector<std::complex<double>> filter_spec_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

std::size_t next_pow2(std::size_t v) {
  std::size_t m = 1;
  while (m < v) m <<= 1;
  return m;
}

}  // namespace

FunctionalTailResult simulate_functional_tail(double r, std::size_t n, double tau,
                                              const InnovationModel& model,
                                              std::span<const double> x_grid,
                                              const FunctionalSimSettings& settings) {
  check_r(r, "simulate_functional_tail");
  if (n < 2) throw DomainError("simulate_functional_tail: n must be at least 2");
  if (settings.nsamples < 10'000)
    throw DomainError("simulate_functional_tail: nsamples must be at least 10^4");
  if (settings.streams == 0) throw DomainError("simulate_functional_tail: streams must be >= 1");
  if (x_grid.empty()) throw DomainError("simulate_functional_tail: empty x grid");
  if (!std::isfinite(tau)) throw DomainError("simulate_functional_tail: tau must be finite");

  const FunctionalZone zone = functional_md_level(r, model.moment_order());
  const double bound = zone.level_bound(n, settings.reading);
  double x_top = 0.0;
  for (double x : x_grid) {
    if (!(x >= 0.0) || !std::isfinite(x))
      throw DomainError("simulate_functional_tail: levels must be finite and nonnegative");
    if (x > bound) {
      throw DomainError("simulate_functional_tail: x = " + std::to_string(x) +
                        " is beyond the Gaussian range " + std::to_string(bound) +
                        " for H_n");
    }
    x_top = std::max(x_top, x);
  }
  const auto total = static_cast<double>(settings.nsamples);
  if (std_normal_sf(x_top) * total < 25.0) {
    throw InsufficientSamplesError("simulate_functional_tail: fewer than 25 expected hits at x = " +
                                   std::to_string(x_top));
  }

  // Filter a_0..a_L, with L minimal so the discarded energy is below
  // trunc_tol times the retained energy.
  const CoefficientRule rule = regvar_coeffs(r);
  std::size_t lag = 1;
  std::vector<double> filter;
  for (;;) {
    filter = rule.prefix(lag + 1);
    double energy = 0.0;
    for (double a : filter) energy += a * a;
    if (rule.tail_sq_bound(static_cast<std::int64_t>(lag) + 1) <= settings.trunc_tol * energy) break;
    if (static_cast<std::int64_t>(lag) >= settings.index_cap) {
      throw ConvergenceError("simulate_functional_tail: filter tolerance not reached within " +
                             std::to_string(settings.index_cap) + " lags");
    }
    lag = std::min<std::size_t>(2 * lag, static_cast<std::size_t>(settings.index_cap));
  }

  const std::size_t span_len = n + lag;  // innovations xi_{1-L}, ..., xi_n
  const std::size_t m = next_pow2(span_len);

  // Per sample: number of i with X_i <= tau.
  std::vector<std::uint32_t> counts(settings.nsamples);
  std::vector<std::size_t> offset(settings.streams + 1, 0);
  for (std::size_t s = 0; s < settings.streams; ++s)
    offset[s + 1] = offset[s] + detail::stream_share(settings.nsamples, settings.streams, s);

  detail::for_each_stream(settings.streams, settings.threads, [&](std::size_t s) {
    Rng rng = detail::stream_rng(settings.seed, s);
    Convolver conv(m, filter);
    double* buf = conv.data();
    for (std::size_t k = offset[s]; k < offset[s + 1]; ++k) {
      model.sample(rng, std::span<double>(buf, span_len));
      std::fill(buf + span_len, buf + m, 0.0);
      conv.run();
      std::uint32_t c = 0;
      for (std::size_t i = lag; i < span_len; ++i) c += buf[i] <= tau ? 1u : 0u;
      counts[k] = c;
    }
  });

  double mean = 0.0;
  for (std::uint32_t c : counts) mean += c;
  mean /= total;
  double var = 0.0;
  for (std::uint32_t c : counts) var += (c - mean) * (c - mean);
  var /= total - 1.0;

  FunctionalTailResult out;
  out.lag = lag;
  out.sd = std::sqrt(var);
  out.centering = model.symmetric() && tau == 0.0 ? 0.5 : mean / static_cast<double>(n);
  if (!(out.sd > 0.0)) throw DegenerateError("simulate_functional_tail: H_n has zero variance");
  const double centre = out.centering * static_cast<double>(n);

  double smallest = 1.0;
  for (double x : x_grid) {
    const double thr = centre + x * out.sd;
    double hits = 0.0;
    for (std::uint32_t c : counts) {
      if (c > thr) hits += 1.0;
      else if (c == thr) hits += 0.5;
    }
    FunctionalTailPoint pt;
    pt.x = x;
    pt.p_hat = hits / total;
    pt.std_error = std::sqrt(pt.p_hat * (1.0 - pt.p_hat) / total);
    pt.gaussian = std_normal_sf(x);
    pt.ratio = pt.p_hat / pt.gaussian;
    out.points.push_back(pt);
    smallest = std::min(smallest, pt.p_hat);
  }
  if (smallest * total < 25.0) {
    throw InsufficientSamplesError("simulate_functional_tail: a level saw fewer than 25 hits; "
                                   "increase nsamples");
  }
  return out;
}

}  // namespace lindev

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
#include "lindev/bounds.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "lindev/deviation.hpp"
#include "lindev/error.hpp"
#include "quadrature.hpp"
#include "sampling.hpp"
#include "summation.hpp"

namespace lindev {

double fuk_nagaev_bound(const FukNagaevInputs& inp) {
  if (!(inp.m >= 2.0) || !std::isfinite(inp.m)) throw DomainError("fuk_nagaev_bound: m must be >= 2");
  if (!(inp.x > 0.0)) throw DomainError("fuk_nagaev_bound: x must be positive");
  if (!(inp.y > 0.0)) throw DomainError("fuk_nagaev_bound: y must be positive");
  if (!(inp.A_n >= 0.0) || !(inp.B_n2 >= 0.0))
    throw DomainError("fuk_nagaev_bound: A_n and B_n2 must be nonnegative");
  const double beta = inp.m / (inp.m + 2.0);
  const double alpha = 1.0 - beta;
  const double gauss =
      inp.B_n2 > 0.0
          ? std::exp(-alpha * alpha * inp.x * inp.x / (2.0 * std::exp(inp.m) * inp.B_n2))
          : 0.0;
  // 0 to a positive power is 0.
  double poly = 0.0;
  if (inp.A_n > 0.0) {
    const double log_base =
        std::log(inp.A_n) - std::log(beta * inp.x) - (inp.m - 1.0) * std::log(inp.y);
    poly = std::exp(beta * inp.x / inp.y * log_base);
  }
  return gauss + poly;
}

namespace {

constexpr std::size_t kMaxPanels = 20'000;

// Integral to relative tolerance: one unrefined pass sets the scale.
template <class F>
double integrate_rel(F&& f, const std::vector<double>& breaks, double tol, const char* who) {
  const quad::Result coarse =
      quad::integrate(f, breaks, std::numeric_limits<double>::infinity(), kMaxPanels);
  const double abs_tol = tol * std::abs(coarse.value) + 1e-300;
  const quad::Result fine = quad::integrate(f, breaks, abs_tol, kMaxPanels);
  if (!fine.converged) {
    throw ConvergenceError(std::string(who) + ": quadrature did not converge (error " +
                           std::to_string(fine.error) + ")");
  }
  return fine.value;
}

// Doubling breakpoints from a to b, a >= 0, starting at max(a, 1/8).
std::vector<double> geometric_breaks(double a, double b) {
  std::vector<double> br{a};
  double v = std::max(2.0 * a, 0.125);
  while (v < b) {
    br.push_back(v);
    v *= 2.0;
  }
  br.push_back(b);
  return br;
}

// int_a^inf g: doubling panels up to U, then u = U / w^2 on w in (0, 1].
template <class G>
double integrate_halfline(G&& g, double a, double tol, const char* who) {
  const double upper = std::max(a, 1.0) * 1024.0;
  const double head = integrate_rel(g, geometric_breaks(a, upper), tol, who);
  auto mapped = [&](double w) {
    const double u = upper / (w * w);
    return g(u) * 2.0 * upper / (w * w * w);
  };
  const std::vector<double> unit{0.0, 0.25, 0.5, 1.0};
  const double tail = integrate_rel(mapped, unit, tol, who);
  return head + tail;
}

}  // namespace

double truncated_positive_moment(const InnovationModel& model, double q, double z, double tol) {
  if (!(q >= 1.0)) throw DomainError("truncated_positive_moment: q must be >= 1");
  if (!(z > 0.0)) throw DomainError("truncated_positive_moment: z must be positive");
  auto g = [&](double u) { return q * std::pow(u, q - 1.0) * model.survival(u); };
  if (std::isinf(z)) {
    if (!(q < model.tail_exponent()))
      throw DomainError("truncated_positive_moment: moment of order q is infinite");
    return integrate_halfline(g, 0.0, tol, "truncated_positive_moment");
  }
  const double body = integrate_rel(g, geometric_breaks(0.0, z), tol, "truncated_positive_moment");
  return std::max(0.0, body - std::pow(z, q) * model.survival(z));
}

double lower_second_moment(const InnovationModel& model, double z, double tol) {
  if (!(z >= 0.0)) throw DomainError("lower_second_moment: z must be nonnegative");
  if (std::isinf(z)) return 0.0;
  auto g = [&](double u) { return 2.0 * u * model.cdf(-u); };
  return z * z * model.cdf(-z) + integrate_halfline(g, z, tol, "lower_second_moment");
}

FukNagaevEvaluation fuk_nagaev_for_model(const CoefficientArray& coeffs,
                                         const InnovationModel& model, double m, double x,
                                         double y, double tol) {
  if (!(m >= 2.0)) throw DomainError("fuk_nagaev_for_model: m must be >= 2");
  if (!(x > 0.0) || !(y > 0.0))
    throw DomainError("fuk_nagaev_for_model: x and y must be positive");
  const double negative_part = lower_second_moment(model, 0.0, tol);
  // Weights often repeat (i.i.d. arrays), so moments are cached per weight.
  std::map<double, std::pair<double, double>> cache;
  NeumaierSum a_sum;
  NeumaierSum b_sum;
  for (double c : coeffs.weights()) {
    if (!(c > 0.0)) continue;
    auto it = cache.find(c);
    if (it == cache.end()) {
      const double z = y / c;
      const double am = truncated_positive_moment(model, m, z, tol);
      const double a2 = m == 2.0 ? am : truncated_positive_moment(model, 2.0, z, tol);
      it = cache.emplace(c, std::make_pair(std::pow(c, m) * am, c * c * (negative_part + a2))).first;
    }
    a_sum.add(it->second.first);
    b_sum.add(it->second.second);
  }
  FukNagaevEvaluation out;
  out.inputs = {m, x, y, a_sum.value(), b_sum.value()};
  out.bound = fuk_nagaev_bound(out.inputs);
  return out;
}

OracleEstimate truncated_sum_tail_mc(const CoefficientArray& coeffs, const InnovationModel& model,
                                     double x, double y, const MonteCarloSettings& mc) {
  if (mc.nsamples == 0 || mc.streams == 0)
    throw DomainError("truncated_sum_tail_mc: nsamples and streams must be >= 1");
  std::vector<double> w;
  for (double c : coeffs.weights())
    if (c > 0.0) w.push_back(c);
  if (w.empty()) throw DegenerateError("truncated_sum_tail_mc: all weights are zero");

  std::vector<std::uint64_t> hits(mc.streams, 0);
  detail::for_each_stream(mc.streams, mc.threads, [&](std::size_t s) {
    Rng rng = detail::stream_rng(mc.seed, s);
    std::vector<double> xi(w.size());
    const std::size_t share = detail::stream_share(mc.nsamples, mc.streams, s);
    for (std::size_t k = 0; k < share; ++k) {
      model.sample(rng, xi);
      if (kernel::truncated_dot(w, xi, y) >= x) ++hits[s];
    }
  });
  std::uint64_t total_hits = 0;
  for (auto h : hits) total_hits += h;
  const auto total = static_cast<double>(mc.nsamples);
  const double p = static_cast<double>(total_hits) / total;
  return {x, p, std::sqrt(p * (1.0 - p) / total), OracleMethod::MonteCarlo, false};
}

double frolov_lambda(const CoefficientArray& coeffs, const InnovationModel& model, double u,
                     double s, double eps) {
  if (!(u >= 0.0) || !(s >= 0.0)) throw DomainError("frolov_lambda: u and s must be nonnegative");
  if (!(eps > 0.0)) throw DomainError("frolov_lambda: eps must be positive");
  if (u == 0.0 || s == 0.0) return 0.0;
  const double sn = sigma_n(coeffs, model.sigma2());
  if (!(sn > 0.0)) throw DegenerateError("frolov_lambda: all weights are zero");
  std::map<double, double> cache;
  NeumaierSum acc;
  for (double c : coeffs.weights()) {
    if (!(c > 0.0)) continue;
    auto it = cache.find(c);
    if (it == cache.end())
      it = cache.emplace(c, c * c * lower_second_moment(model, eps * sn / (s * c))).first;
    acc.add(it->second);
  }
  return u / (sn * sn) * acc.value();
}

FrolovQuantities frolov_quantities(const CoefficientArray& coeffs, const InnovationModel& model,
                                   double x, double p, double eps) {
  if (!(p > 2.0)) throw DomainError("frolov_quantities: p must exceed 2");
  if (!(x >= 0.0)) throw DomainError("frolov_quantities: x must be nonnegative");
  const double sn = sigma_n(coeffs, model.sigma2());
  if (!(sn > 0.0)) throw DegenerateError("frolov_quantities: all weights are zero");
  const double moment = truncated_positive_moment(model, p, std::numeric_limits<double>::infinity());

  FrolovQuantities out;
  // sigma_n^{-p} B_np = sigma^{-p} D_np keeps the powers in range.
  out.L_np = moment * dnt(coeffs, p) / std::pow(model.sigma2(), 0.5 * p);
  if (!(out.L_np < 1.0)) throw DomainError("frolov_quantities: L_np >= 1");
  out.lambda = frolov_lambda(coeffs, model, std::pow(x, 4.0), std::pow(x, 5.0), eps);
  const double log_inv = -std::log(out.L_np);
  out.zone_stat = x * x - 2.0 * log_inv - (p - 1.0) * std::log(log_inv);
  return out;
}

}  // namespace lindev

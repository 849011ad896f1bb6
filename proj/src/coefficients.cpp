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
#include "lindev/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "lindev/error.hpp"
#include "lindev/special_math.hpp"
#include "summation.hpp"

namespace lindev {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double Provenance::param(const std::string& key, double fallback) const {
  for (const auto& [k, v] : params)
    if (k == key) return v;
  return fallback;
}

bool Provenance::has(const std::string& key) const {
  return std::any_of(params.begin(), params.end(), [&](const auto& kv) { return kv.first == key; });
}

std::string Provenance::to_string() const {
  std::string out = generator;
  for (const auto& [k, v] : params) out += ";" + k + "=" + format_double(v);
  return out;
}

CoefficientArray::CoefficientArray(std::int64_t first_index, std::vector<double> weights,
                                   double truncation_l2_bound, Provenance provenance)
    : first_index_(first_index),
      weights_(std::move(weights)),
      truncation_l2_bound_(truncation_l2_bound),
      provenance_(std::move(provenance)) {
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw DomainError("CoefficientArray: weights must be finite and nonnegative");
  }
  if (!(truncation_l2_bound_ >= 0.0))
    throw DomainError("CoefficientArray: truncation bound must be nonnegative");
}

double CoefficientArray::max_weight() const {
  return weights_.empty() ? 0.0 : *std::max_element(weights_.begin(), weights_.end());
}

double CoefficientArray::at_index(std::int64_t i) const {
  const std::int64_t k = i - first_index_;
  if (k < 0 || k >= static_cast<std::int64_t>(weights_.size())) return 0.0;
  return weights_[static_cast<std::size_t>(k)];
}

CoefficientArray CoefficientArray::scaled(double factor) const {
  if (!(factor > 0.0)) throw DomainError("scaled: factor must be positive");
  std::vector<double> w(weights_);
  for (double& v : w) v *= factor;
  return {first_index_, std::move(w), truncation_l2_bound_ * factor * factor, provenance_};
}

double CoefficientRule::operator()(std::int64_t i) const {
  if (i < 0) return 0.0;
  return prefix(static_cast<std::size_t>(i) + 1).back();
}

CoefficientArray iid_weights(std::size_t n) {
  if (n == 0) throw DomainError("iid_weights: n must be >= 1");
  return {1, std::vector<double>(n, 1.0), 0.0, {"iid", {{"n", static_cast<double>(n)}}}};
}

CoefficientArray regression_weights(std::span<const double> alphas) {
  if (alphas.empty()) throw DomainError("regression_weights: empty design");
  NeumaierSum ss;
  for (double a : alphas) {
    if (!(a > 0.0) || !std::isfinite(a))
      throw DomainError("regression_weights: alphas must be positive");
    ss.add(a * a);
  }
  const double denom = ss.value();
  std::vector<double> w;
  w.reserve(alphas.size());
  for (double a : alphas) w.push_back(a / denom);
  return {1, std::move(w), 0.0,
          {"regression", {{"n", static_cast<double>(alphas.size())}, {"A_n2", denom}}}};
}

double box_kernel(double u) { return std::abs(u) <= 1.0 ? 0.5 : 0.0; }

double gaussian_kernel(double u) {
  return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
}

double epanechnikov_kernel(double u) { return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0; }

CoefficientArray kernel_weights(std::span<const double> design_points, double x, double bandwidth,
                                const Kernel& kernel) {
  if (design_points.empty()) throw DomainError("kernel_weights: no design points");
  if (!(bandwidth > 0.0)) throw DomainError("kernel_weights: bandwidth must be positive");
  std::vector<double> w;
  w.reserve(design_points.size());
  NeumaierSum total;
  for (double xi : design_points) {
    const double k = kernel((xi - x) / bandwidth);
    if (!(k >= 0.0)) throw DomainError("kernel_weights: kernel must be nonnegative");
    w.push_back(k);
    total.add(k);
  }
  const double s = total.value();
  if (!(s > 0.0)) throw DegenerateError("kernel_weights: all kernel evaluations are zero");
  for (double& v : w) v /= s;
  return {1, std::move(w), 0.0,
          {"kernel",
           {{"n", static_cast<double>(design_points.size())}, {"x", x}, {"bandwidth", bandwidth}}}};
}

CoefficientRule finite_rule(std::vector<double> a) {
  // suffix[k] = sum_{i >= k} a_i^2
  std::vector<double> suffix(a.size() + 1, 0.0);
  for (std::size_t k = a.size(); k-- > 0;) suffix[k] = suffix[k + 1] + a[k] * a[k];
  CoefficientRule rule;
  rule.prefix = [a](std::size_t count) {
    std::vector<double> out(count, 0.0);
    std::copy_n(a.begin(), std::min(count, a.size()), out.begin());
    return out;
  };
  rule.tail_sq_bound = [suffix = std::move(suffix)](std::int64_t k) {
    if (k < 0) k = 0;
    return static_cast<std::size_t>(k) < suffix.size() ? suffix[static_cast<std::size_t>(k)] : 0.0;
  };
  rule.provenance = {"finite", {{"length", static_cast<double>(a.size())}}};
  return rule;
}

CoefficientRule regvar_coeffs(double r) {
  if (!(r > 0.5 && r < 1.0)) throw DomainError("regvar_coeffs: r must lie in (1/2, 1)");
  CoefficientRule rule;
  rule.prefix = [r](std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = std::pow(1.0 + static_cast<double>(i), -r);
    return out;
  };
  // sum_{i >= k} (1+i)^{-2r} <= int_k^inf x^{-2r} dx
  rule.tail_sq_bound = [r](std::int64_t k) {
    const double kk = static_cast<double>(std::max<std::int64_t>(k, 1));
    return std::pow(kk, 1.0 - 2.0 * r) / (2.0 * r - 1.0);
  };
  rule.provenance = {"regvar", {{"r", r}}};
  return rule;
}

CoefficientRule farima_coeffs(double d) {
  if (!(d > 0.0 && d < 0.5)) throw DomainError("farima_coeffs: d must lie in (0, 1/2)");
  CoefficientRule rule;
  rule.prefix = [d](std::size_t count) {
    std::vector<double> out(count);
    double a = 1.0;
    for (std::size_t i = 0; i < count; ++i) {
      if (i > 0) a *= (static_cast<double>(i) - 1.0 + d) / static_cast<double>(i);
      out[i] = a;
    }
    return out;
  };
  // Gautschi: a_i < i^{d-1} / Gamma(d) for i >= 1, so
  // sum_{i>=k} a_i^2 <= Gamma(d)^{-2} int_{k-1}^inf x^{2d-2} dx, doubled for safety.
  const double inv_gamma_sq = std::exp(-2.0 * log_gamma(d));
  rule.tail_sq_bound = [d, inv_gamma_sq](std::int64_t k) {
    if (k <= 1) return 2.0 * inv_gamma_sq * (1.0 + 1.0 / (1.0 - 2.0 * d));
    const double km1 = static_cast<double>(k - 1);
    return 2.0 * inv_gamma_sq * std::pow(km1, 2.0 * d - 1.0) / (1.0 - 2.0 * d);
  };
  rule.provenance = {"farima", {{"d", d}}};
  return rule;
}

CoefficientArray ma_window_coeffs(const CoefficientRule& rule, std::size_t n,
                                  const TruncationPolicy& policy) {
  if (n == 0) throw DomainError("ma_window_coeffs: n must be >= 1");
  if (!(policy.rel_tol > 0.0)) throw DomainError("ma_window_coeffs: tolerance must be positive");
  const auto nn = static_cast<std::int64_t>(n);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);

  // Window sums for a past of length `past`, stored oldest first:
  // index i = 1 - past, ..., n.
  auto build = [&](std::int64_t past) {
    const auto count = static_cast<std::size_t>(nn + past);
    const std::vector<double> a = rule.prefix(count);
    // prefix[m] = a_0 + ... + a_{m-1}
    std::vector<long double> prefix(count + 1, 0.0L);
    for (std::size_t m = 0; m < count; ++m) prefix[m + 1] = prefix[m] + a[m];
    std::vector<double> b(count);
    for (std::int64_t i = 1 - past; i <= nn; ++i) {
      const std::int64_t hi = nn - i;              // largest lag in the window
      const std::int64_t lo = std::max<std::int64_t>(1 - i, 0);
      const long double s = prefix[static_cast<std::size_t>(hi + 1)] - prefix[static_cast<std::size_t>(lo)];
      b[static_cast<std::size_t>(i - (1 - past))] = std::max(0.0, static_cast<double>(s));
    }
    return b;
  };
  auto discarded_bound = [&](std::int64_t past) { return n2 * rule.tail_sq_bound(past + 1); };

  // Grow the past geometrically until the certificate is met.
  std::int64_t past = 0;
  std::vector<double> b = build(0);
  auto retained_sq = [](std::span<const double> w, std::size_t skip) {
    NeumaierSum s;
    for (std::size_t k = skip; k < w.size(); ++k) s.add(w[k] * w[k]);
    return s.value();
  };
  while (discarded_bound(past) > policy.rel_tol * retained_sq(b, 0)) {
    const std::int64_t next = past == 0 ? std::max<std::int64_t>(nn, 16) : 2 * past;
    if (past >= policy.index_cap) {
      throw ConvergenceError("ma_window_coeffs: truncation tolerance " + format_double(policy.rel_tol) +
                             " not reached within index cap " + std::to_string(policy.index_cap));
    }
    past = std::min(next, policy.index_cap);
    b = build(past);
  }

  // Shrink to the shortest past meeting the certificate. The retained sum is
  // monotone in the past length, so bisection on the suffix sums is exact.
  if (past > 0) {
    // suffix_sq[k]: sum of squares of b from position k to the end
    std::vector<double> suffix_sq(b.size() + 1, 0.0);
    {
      long double acc = 0.0L;
      for (std::size_t k = b.size(); k-- > 0;) {
        acc += static_cast<long double>(b[k]) * b[k];
        suffix_sq[k] = static_cast<double>(acc);
      }
    }
    auto ok = [&](std::int64_t len) {
      return discarded_bound(len) <= policy.rel_tol * suffix_sq[static_cast<std::size_t>(past - len)];
    };
    std::int64_t lo = 0;  // may fail
    std::int64_t hi = past;
    if (ok(0)) hi = 0;
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      (ok(mid) ? hi : lo) = mid;
    }
    b.erase(b.begin(), b.begin() + (past - hi));
    past = hi;
  }

  Provenance prov{"ma_window:" + rule.provenance.generator,
                  {{"n", static_cast<double>(n)}, {"past", static_cast<double>(past)}}};
  for (const auto& kv : rule.provenance.params) prov.params.push_back(kv);
  return {1 - past, std::move(b), discarded_bound(past), std::move(prov)};
}

CoefficientArray normalize_unit_variance(const CoefficientArray& coeffs, double sigma2) {
  if (!(sigma2 > 0.0)) throw DomainError("normalize_unit_variance: sigma2 must be positive");
  NeumaierSum ss;
  for (double w : coeffs.weights()) ss.add(w * w);
  if (!(ss.value() > 0.0)) throw DegenerateError("normalize_unit_variance: all weights are zero");
  const double scale = 1.0 / std::sqrt(sigma2 * ss.value());
  std::vector<double> w(coeffs.weights().begin(), coeffs.weights().end());
  for (double& v : w) v *= scale;
  Provenance prov = coeffs.provenance();
  prov.params.emplace_back("scale", scale);
  return {coeffs.first_index(), std::move(w), coeffs.truncation_l2_bound() * scale * scale,
          std::move(prov)};
}

void write_csv(std::ostream& os, const CoefficientArray& coeffs) {
  os << "# provenance=" << coeffs.provenance().to_string()
     << " truncation_l2_bound=" << format_double(coeffs.truncation_l2_bound()) << "\n";
  os << "index,weight\n";
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    os << coeffs.first_index() + static_cast<std::int64_t>(k) << "," << format_double(coeffs[k])
       << "\n";
  }
}

CoefficientArray read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# provenance=", 0) != 0)
    throw DomainError("read_csv: missing provenance line");
  const auto sp = line.find(" truncation_l2_bound=");
  if (sp == std::string::npos) throw DomainError("read_csv: missing truncation_l2_bound");
  const std::string prov_text = line.substr(13, sp - 13);
  const double bound = std::stod(line.substr(sp + 21));

  Provenance prov;
  {
    std::stringstream ps(prov_text);
    std::string field;
    std::getline(ps, prov.generator, ';');
    while (std::getline(ps, field, ';')) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw DomainError("read_csv: malformed provenance field");
      prov.params.emplace_back(field.substr(0, eq), std::stod(field.substr(eq + 1)));
    }
  }
  if (!std::getline(is, line) || line != "index,weight")
    throw DomainError("read_csv: missing column header");

  std::vector<double> w;
  std::int64_t first = 0;
  std::int64_t expected = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError("read_csv: malformed row");
    const std::int64_t idx = std::stoll(line.substr(0, comma));
    if (w.empty()) {
      first = idx;
    } else if (idx != expected) {
      throw DomainError("read_csv: indices must be contiguous");
    }
    expected = idx + 1;
    w.push_back(std::stod(line.substr(comma + 1)));
  }
  return {first, std::move(w), bound, std::move(prov)};
}

}  // namespace lindev

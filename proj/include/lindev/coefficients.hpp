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
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lindev {

/// Records which generator produced a coefficient array, with its parameters
/// in insertion order.
struct Provenance {
  std::string generator;
  std::vector<std::pair<std::string, double>> params;

  /// Value of a named parameter, or `fallback` if absent.
  double param(const std::string& key, double fallback) const;
  bool has(const std::string& key) const;
  /// "generator;key=value;key=value"
  std::string to_string() const;
};

/// Nonnegative weights c_ni over a contiguous index range
/// [first_index, first_index + size), together with a certified upper bound
/// on the sum of squares of all weights that were discarded.
///
/// Immutable after construction.
class CoefficientArray {
 public:
  CoefficientArray(std::int64_t first_index, std::vector<double> weights,
                   double truncation_l2_bound, Provenance provenance);

  std::int64_t first_index() const { return first_index_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }
  double operator[](std::size_t k) const { return weights_[k]; }
  double truncation_l2_bound() const { return truncation_l2_bound_; }
  const Provenance& provenance() const { return provenance_; }

  /// Largest retained weight.
  double max_weight() const;

  /// Weight at absolute index i, zero outside the retained range.
  double at_index(std::int64_t i) const;

  /// Copy with every weight multiplied by `factor` > 0.
  CoefficientArray scaled(double factor) const;

 private:
  std::int64_t first_index_;
  std::vector<double> weights_;
  double truncation_l2_bound_;
  Provenance provenance_;
};

/// A causal filter i -> a_i (a_i = 0 for i < 0) with a computable bound on
/// its square-summable tail.
struct CoefficientRule {
  /// Returns a_0, ..., a_{count-1}.
  std::function<std::vector<double>(std::size_t count)> prefix;
  /// Upper bound on sum_{i >= k} a_i^2, valid for k >= 1.
  std::function<double(std::int64_t k)> tail_sq_bound;
  Provenance provenance;

  /// a_i; zero for i < 0.
  double operator()(std::int64_t i) const;
};

struct TruncationPolicy {
  double rel_tol = 1e-8;
  std::int64_t index_cap = 10'000'000;
};

/// c_ni = 1 for i = 1..n.
CoefficientArray iid_weights(std::size_t n);

/// Least squares weights c_i = alpha_i / sum alpha_j^2.
CoefficientArray regression_weights(std::span<const double> alphas);

using Kernel = std::function<double(double)>;
double box_kernel(double u);
double gaussian_kernel(double u);
double epanechnikov_kernel(double u);

/// Nadaraya-Watson weights K((x_i - x)/h) / sum_j K((x_j - x)/h).
CoefficientArray kernel_weights(std::span<const double> design_points, double x,
                                double bandwidth, const Kernel& kernel);

/// Window sums b_ni = a_{1-i} + ... + a_{n-i} for the partial sum of
/// X_k = sum_j a_{k-j} xi_j, k = 1..n.
///
/// Indices run over 1 <= i <= n plus a finite stretch of the causal past,
/// extended until n^2 * sum_{m > L} a_m^2 (a bound on the discarded mass by
/// Cauchy-Schwarz) drops below rel_tol times the retained sum of squares.
/// Throws ConvergenceError if that needs more than index_cap past indices.
CoefficientArray ma_window_coeffs(const CoefficientRule& rule, std::size_t n,
                                  const TruncationPolicy& policy = {});

/// Finite filter (a_0, ..., a_{m-1}); exact, no tail.
CoefficientRule finite_rule(std::vector<double> a);

/// a_i = (1+i)^{-r}, 1/2 < r < 1.
CoefficientRule regvar_coeffs(double r);

/// FARIMA(0,d,0): a_i = Gamma(i+d) / (Gamma(d) Gamma(i+1)), 0 < d < 1/2.
CoefficientRule farima_coeffs(double d);

/// Rescales so that sigma2 * sum c^2 = 1. The scale factor is appended to the
/// provenance as "scale".
CoefficientArray normalize_unit_variance(const CoefficientArray& coeffs, double sigma2);

/// CSV: one '#' line with provenance and truncation bound, a column header,
/// then one "index,weight" row per retained weight.
void write_csv(std::ostream& os, const CoefficientArray& coeffs);
CoefficientArray read_csv(std::istream& is);

}  // namespace lindev

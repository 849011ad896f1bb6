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
#include "sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lindev::kernel {

namespace {
constexpr std::size_t kBlock = 512;
}

void student_t(Rng& rng, double nu, std::span<double> out) {
  const double expo = -2.0 / nu;
  double w[kBlock];
  double th[kBlock];
  for (std::size_t start = 0; start < out.size(); start += kBlock) {
    const std::size_t m = std::min(kBlock, out.size() - start);
    // W is offset by half an ulp so it is never 0.
    for (std::size_t i = 0; i < m; ++i) {
      w[i] = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
      th[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
    double* o = out.data() + start;
    for (std::size_t i = 0; i < m; ++i) {
      const double r2 = nu * (std::exp(expo * std::log(w[i])) - 1.0);
      o[i] = std::cos(2.0 * std::numbers::pi * th[i]) * std::sqrt(r2);
    }
  }
}

void uniform(Rng& rng, double a, std::span<double> out) {
  for (double& v : out) v = a * (2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0);
}

double dot(std::span<const double> w, std::span<const double> xi) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * xi[i];
  return s;
}

double truncated_dot(std::span<const double> w, std::span<const double> xi, double y) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double v = w[i] * xi[i];
    s += v <= y ? v : 0.0;
  }
  return s;
}

SumMax sum_max_except(std::span<const double> w, std::span<const double> xi, std::size_t skip) {
  double s = 0.0;
  double m = -std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < skip; ++i) {
    const double v = w[i] * xi[i];
    s += v;
    m = std::max(m, v);
  }
  for (std::size_t i = skip + 1; i < w.size(); ++i) {
    const double v = w[i] * xi[i];
    s += v;
    m = std::max(m, v);
  }
  return {s, m};
}

}  // namespace lindev::kernel

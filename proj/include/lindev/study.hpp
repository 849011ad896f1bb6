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
#include <string>
#include <string_view>
#include <vector>

namespace lindev {

enum class OracleChoice { CF, MC, Both };
OracleChoice parse_oracle_choice(std::string_view s);
std::string_view to_string(OracleChoice c);

/// Settings for the numerical study: a long memory moving average with
/// a_i = (1+i)^{-r}, Student-t(nu) innovations and window length n.
/// Levels are in sigma_n units.
struct StudyConfig {
  double nu = 3.0;
  double r = 0.9;
  std::size_t n = 300;
  double x_min = 0.1;
  double x_max = 10.0;
  std::size_t x_points = 60;
  OracleChoice oracle = OracleChoice::CF;
  std::size_t mc_samples = 100'000;
  std::uint64_t seed = 1;
  std::size_t mc_streams = 16;
  unsigned threads = 0;
  double quad_tol = 1e-9;
  /// Relative L2 tolerance for cutting the infinite past of the window sums.
  double trunc_tol = 1e-2;
  std::int64_t index_cap = 10'000'000;
  double t = 0.0;  // tail exponent for zones; 0 means nu
  double p = 0.0;  // moment order; 0 means (2 + nu) / 2
  double a = 1.5;
  double b = 1.3;
  double band = 0.05;
  std::vector<double> alphas{1e-3};
  // functional demo
  double tau = 0.0;
  std::size_t functional_samples = 100'000;
  double functional_trunc_tol = 1e-3;
  bool linear_level = false;

  void validate() const;
  /// Log-spaced levels from x_min to x_max.
  std::vector<double> x_grid() const;
};

/// Each run returns the complete CSV text, header first; nothing is
/// produced when a run fails.
std::string run_figure1(const StudyConfig& cfg);
std::string run_zone_report(const StudyConfig& cfg);
std::string run_var_es(const StudyConfig& cfg);
std::string run_coefficients(const StudyConfig& cfg);
std::string run_functional(const StudyConfig& cfg);

}  // namespace lindev

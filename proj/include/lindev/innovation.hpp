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

#include <memory>
#include <random>
#include <span>
#include <string>

namespace lindev {

using Rng = std::mt19937_64;

/// Law of the i.i.d. innovations xi_i: variance, right-tail behaviour
/// P(xi >= x) ~ h0 / x^t, a moment order p with E|xi|^p finite, exact
/// distribution functions and a sampler.
///
/// A tail constant of 0 means the model has no power-law right tail.
class InnovationModel {
 public:
  virtual ~InnovationModel() = default;

  virtual std::string name() const = 0;
  double sigma2() const { return sigma2_; }
  double tail_exponent() const { return tail_exponent_; }
  double tail_constant() const { return tail_constant_; }
  double moment_order() const { return moment_order_; }
  bool symmetric() const { return symmetric_; }

  /// P(xi >= x).
  virtual double survival(double x) const = 0;
  /// P(xi <= x).
  virtual double cdf(double x) const = 0;
  /// Fills `out` with independent draws.
  virtual void sample(Rng& rng, std::span<double> out) const = 0;

  /// Real characteristic function, available for symmetric models only.
  virtual bool has_cf() const { return false; }
  virtual double cf(double y) const;
  /// Degrees of freedom when the model is Student-t, else 0.
  virtual double student_nu() const { return 0.0; }

 protected:
  InnovationModel(double sigma2, double tail_exponent, double tail_constant, double moment_order,
                  bool symmetric);

 private:
  double sigma2_;
  double tail_exponent_;
  double tail_constant_;
  double moment_order_;
  bool symmetric_;
};

/// Student-t with nu > 2 degrees of freedom (unit scale).
/// h0 = Gamma((nu+1)/2) nu^{(nu-2)/2} / (sqrt(pi) Gamma(nu/2)).
class StudentT final : public InnovationModel {
 public:
  /// moment_order defaults to (2 + nu) / 2.
  explicit StudentT(double nu, double moment_order = 0.0);

  std::string name() const override;
  double survival(double x) const override;
  double cdf(double x) const override;
  void sample(Rng& rng, std::span<double> out) const override;
  bool has_cf() const override { return true; }
  double cf(double y) const override;
  double student_nu() const override { return nu_; }
  double nu() const { return nu_; }

 private:
  double nu_;
};

/// Uniform on [-a, a]; bounded, so no power tail (tail constant 0).
class UniformInnovation final : public InnovationModel {
 public:
  explicit UniformInnovation(double half_width);

  std::string name() const override;
  double survival(double x) const override;
  double cdf(double x) const override;
  void sample(Rng& rng, std::span<double> out) const override;
  bool has_cf() const override { return true; }
  double cf(double y) const override;

 private:
  double a_;
};

/// Double in [0,1) built from the top 53 bits of one draw.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace lindev

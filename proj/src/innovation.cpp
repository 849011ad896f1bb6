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
#include "lindev/innovation.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "lindev/error.hpp"
#include "lindev/oracle.hpp"
#include "lindev/special_math.hpp"
#include "sampling.hpp"

namespace lindev {

InnovationModel::InnovationModel(double sigma2, double tail_exponent, double tail_constant,
                                 double moment_order, bool symmetric)
    : sigma2_(sigma2),
      tail_exponent_(tail_exponent),
      tail_constant_(tail_constant),
      moment_order_(moment_order),
      symmetric_(symmetric) {
  if (!(sigma2 > 0.0)) throw DomainError("InnovationModel: variance must be positive");
  if (!(tail_constant >= 0.0)) throw DomainError("InnovationModel: tail constant must be >= 0");
}

double InnovationModel::cf(double) const {
  throw DomainError("model " + name() + " exposes no characteristic function");
}

namespace {

double student_h0(double nu) {
  return std::exp(log_gamma(0.5 * (nu + 1.0)) - log_gamma(0.5 * nu) +
                  0.5 * (nu - 2.0) * std::log(nu)) /
         std::sqrt(std::numbers::pi);
}

double checked_nu(double nu) {
  if (!(nu > 2.0) || !std::isfinite(nu)) throw DomainError("StudentT: nu must exceed 2");
  return nu;
}

}  // namespace

StudentT::StudentT(double nu, double moment_order)
    : InnovationModel(checked_nu(nu) / (nu - 2.0), nu, student_h0(nu),
                      moment_order > 0.0 ? moment_order : 0.5 * (2.0 + nu), true),
      nu_(nu) {
  if (!(this->moment_order() > 2.0 && this->moment_order() < nu))
    throw DomainError("StudentT: moment order must lie in (2, nu)");
}

std::string StudentT::name() const { return "student_t(" + std::to_string(nu_) + ")"; }

double StudentT::survival(double x) const {
  const boost::math::students_t_distribution<double> dist(nu_);
  return boost::math::cdf(boost::math::complement(dist, x));
}

double StudentT::cdf(double x) const {
  const boost::math::students_t_distribution<double> dist(nu_);
  return boost::math::cdf(dist, x);
}

void StudentT::sample(Rng& rng, std::span<double> out) const { kernel::student_t(rng, nu_, out); }

double StudentT::cf(double y) const { return student_t_cf(nu_, y); }

namespace {
double checked_half_width(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("UniformInnovation: half width must be positive");
  return a;
}
}  // namespace

UniformInnovation::UniformInnovation(double half_width)
    : InnovationModel(checked_half_width(half_width) * half_width / 3.0,
                      std::numeric_limits<double>::infinity(), 0.0,
                      std::numeric_limits<double>::infinity(), true),
      a_(half_width) {}

std::string UniformInnovation::name() const { return "uniform(" + std::to_string(a_) + ")"; }

double UniformInnovation::survival(double x) const {
  if (x <= -a_) return 1.0;
  if (x >= a_) return 0.0;
  return 0.5 * (a_ - x) / a_;
}

double UniformInnovation::cdf(double x) const { return 1.0 - survival(x); }

void UniformInnovation::sample(Rng& rng, std::span<double> out) const {
  kernel::uniform(rng, a_, out);
}

double UniformInnovation::cf(double y) const {
  const double z = a_ * y;
  return z == 0.0 ? 1.0 : std::sin(z) / z;
}

}  // namespace lindev

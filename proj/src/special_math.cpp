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
#include "lindev/special_math.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "lindev/error.hpp"

namespace lindev {

namespace {

constexpr double kPi = std::numbers::pi;

// Wichura, AS241 (PPND16). Rational approximations accurate to about 1e-16.
double ppnd16(double p) {
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2509.0809287301226727 * r + 33430.575583588128105) * r +
                 67265.770927008700853) * r + 45921.953931549871457) * r +
               13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((5226.495278852545925 * r + 28729.085735721942674) * r +
                 39307.89580009271061) * r + 21213.794301586595867) * r +
               5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
                0.24178072517745061177) * r + 1.27045825245236838258) * r +
              3.64784832476320460504) * r + 5.7694972214606914055) * r +
            4.6303378461565452959) * r + 1.42343711074968357734) /
          (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
                0.0151986665636164571966) * r + 0.14810397642748007459) * r +
              0.68976733498510000455) * r + 1.6763848301838038494) * r +
            2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                0.0012426609473880784386) * r + 0.026532189526576123093) * r +
              0.29656057182850489123) * r + 1.7848265399172913358) * r +
            5.4637849111641143699) * r + 6.6579046435011037772) /
          (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
                1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
              0.0148753612908506148525) * r + 0.13692988092273580531) * r +
            0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

bool near_half_integer(double order, int& k) {
  const double shifted = order - 0.5;
  const double nearest = std::round(shifted);
  if (nearest >= 0.0 && std::abs(shifted - nearest) <= 1e-12) {
    k = static_cast<int>(nearest);
    return true;
  }
  return false;
}

// e^z K_{k+1/2}(z) = sqrt(pi/(2z)) * sum_{j=0}^{k} (k+j)! / (j! (k-j)! (2z)^j)
double half_integer_scaled(int k, double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j <= k; ++j) {
    term *= static_cast<double>((k + j) * (k - j + 1)) / (j * 2.0 * z);
    sum += term;
  }
  return std::sqrt(kPi / (2.0 * z)) * sum;
}

// Coefficients of 1/Gamma(z) = sum_k c_k z^k (Abramowitz & Stegun 6.1.34).
constexpr std::array<double, 26> kRecipGamma = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
};

// Temme's gamma1, gamma2 and 1/Gamma(1 +- mu) for |mu| <= 1/2.
struct TemmeGammas {
  double gam1, gam2, gampl, gammi;
};

TemmeGammas temme_gammas(double mu) {
  // With 1/Gamma(1+x) = sum_{k>=1} c_k x^{k-1}:
  //   gam1 = -sum_{k even} c_k mu^{k-2},  gam2 = sum_{k odd} c_k mu^{k-1}
  double gam1 = 0.0;
  double gam2 = 0.0;
  double power = 1.0;
  for (std::size_t k = 1; k < kRecipGamma.size(); k += 2) {
    gam2 += kRecipGamma[k - 1] * power;
    gam1 -= kRecipGamma[k] * power;
    power *= mu * mu;
  }
  return {gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1};
}

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

// Returns e^z K_mu(z) and e^z K_{mu+1}(z) for |mu| <= 1/2.
void bessel_k_pair_scaled(double mu, double z, double& kmu, double& kmu1) {
  if (z < 2.0) {
    const double x2 = 0.5 * z;
    const double pimu = kPi * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu * mu);
      c *= d / i;
      p /= i - mu;
      q /= i + mu;
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (i > kMaxIter) throw ConvergenceError("bessel_k: series did not converge");
    const double scale = std::exp(z);
    kmu = sum * scale;
    kmu1 = sum1 * (2.0 / z) * scale;
    return;
  }
  // Steed's method for the continued fraction CF2.
  double b = 2.0 * (1.0 + z);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 2;
  for (; i <= kMaxIter; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  if (i > kMaxIter) throw ConvergenceError("bessel_k: continued fraction did not converge");
  h *= a1;
  kmu = std::sqrt(kPi / (2.0 * z)) / s;
  kmu1 = kmu * (mu + z + 0.5 - h) / z;
}

}  // namespace

double std_normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("std_normal_quantile: p must lie in (0,1), got " + std::to_string(p));
  }
  double x = ppnd16(p);
  // One Halley step against erfc tightens the tails.
  const double err = (1.0 - p) - std_normal_sf(x);
  const double dens = std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
  if (dens > 0.0) {
    const double u = -err / dens;
    x = x - u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: x must be positive");
  return std::lgamma(x);
}

double bessel_k_scaled(double order, double z) {
  if (!(z > 0.0)) throw DomainError("bessel_k: z must be positive");
  if (!(order >= 0.0) || !std::isfinite(order)) throw DomainError("bessel_k: order must be >= 0");
  int k = 0;
  if (near_half_integer(order, k)) return half_integer_scaled(k, z);

  const int nl = static_cast<int>(order + 0.5);
  const double mu = order - nl;
  double kmu = 0.0;
  double kmu1 = 0.0;
  bessel_k_pair_scaled(mu, z, kmu, kmu1);
  for (int i = 1; i <= nl; ++i) {
    const double next = (mu + i) * (2.0 / z) * kmu1 + kmu;
    kmu = kmu1;
    kmu1 = next;
  }
  return kmu;
}

double bessel_k(double order, double z) { return bessel_k_scaled(order, z) * std::exp(-z); }

}  // namespace lindev

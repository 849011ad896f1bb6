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
#include "lindev/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>

#include "lindev/coefficients.hpp"
#include "lindev/deviation.hpp"
#include "lindev/error.hpp"
#include "lindev/functionals.hpp"
#include "lindev/innovation.hpp"
#include "lindev/oracle.hpp"
#include "lindev/risk.hpp"
#include "lindev/special_math.hpp"

namespace lindev {

OracleChoice parse_oracle_choice(std::string_view s) {
  if (s == "cf") return OracleChoice::CF;
  if (s == "mc") return OracleChoice::MC;
  if (s == "both") return OracleChoice::Both;
  throw DomainError("oracle must be one of cf, mc, both");
}

std::string_view to_string(OracleChoice c) {
  switch (c) {
    case OracleChoice::CF: return "cf";
    case OracleChoice::MC: return "mc";
    case OracleChoice::Both: return "both";
  }
  return "unknown";
}

void StudyConfig::validate() const {
  if (!(nu > 2.0) || !std::isfinite(nu)) throw DomainError("nu must exceed 2");
  if (!(r > 0.5 && r < 1.0)) throw DomainError("r must lie in (1/2, 1)");
  if (n < 1) throw DomainError("n must be at least 1");
  if (!(x_min > 0.0 && x_max >= x_min) || !std::isfinite(x_max))
    throw DomainError("need 0 < x-min <= x-max");
  if (x_points < 1) throw DomainError("x-points must be at least 1");
  if (mc_samples < 1) throw DomainError("mc-samples must be at least 1");
  if (mc_streams < 1) throw DomainError("mc streams must be at least 1");
  if (!(quad_tol > 0.0)) throw DomainError("quad-tol must be positive");
  if (!(trunc_tol > 0.0)) throw DomainError("trunc-tol must be positive");
  if (t != 0.0 && !(t > 2.0)) throw DomainError("t must exceed 2");
  if (p != 0.0 && !(p > 2.0)) throw DomainError("p must exceed 2");
  for (double al : alphas)
    if (!(al > 0.0 && al < 0.5)) throw DomainError("alpha must lie in (0, 1/2)");
}

std::vector<double> StudyConfig::x_grid() const {
  std::vector<double> xs(x_points);
  if (x_points == 1) {
    xs[0] = x_min;
    return xs;
  }
  const double l0 = std::log(x_min);
  const double step = (std::log(x_max) - l0) / static_cast<double>(x_points - 1);
  for (std::size_t k = 0; k < x_points; ++k) xs[k] = std::exp(l0 + step * static_cast<double>(k));
  xs.front() = x_min;
  xs.back() = x_max;
  return xs;
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

struct Setup {
  CoefficientArray coeffs;
  StudentT model;
  double sn;
  double t;
  double p;
};

Setup make_setup(const StudyConfig& cfg) {
  cfg.validate();
  CoefficientArray coeffs =
      ma_window_coeffs(regvar_coeffs(cfg.r), cfg.n, {cfg.trunc_tol, cfg.index_cap});
  StudentT model(cfg.nu, cfg.p);
  const double sn = sigma_n(coeffs, model.sigma2());
  const double t = cfg.t > 0.0 ? cfg.t : cfg.nu;
  return {std::move(coeffs), model, sn, t, model.moment_order()};
}

MonteCarloSettings mc_settings(const StudyConfig& cfg) {
  MonteCarloSettings mc;
  mc.nsamples = cfg.mc_samples;
  mc.seed = cfg.seed;
  mc.streams = cfg.mc_streams;
  mc.threads = cfg.threads;
  return mc;
}

// CF inversion at each raw level; levels are independent work items.
std::vector<OracleEstimate> cf_grid(const Setup& s, const StudyConfig& cfg,
                                    const std::vector<double>& levels) {
  std::vector<OracleEstimate> out(levels.size());
  const QuadratureSettings quad{cfg.quad_tol, QuadratureSettings{}.max_panels};
  detail::for_each_stream(levels.size(), cfg.threads, [&](std::size_t k) {
    out[k] = cf_invert_tail(s.coeffs, cfg.nu, levels[k], quad);
  });
  return out;
}

}  // namespace

std::string run_figure1(const StudyConfig& cfg) {
  const Setup s = make_setup(cfg);
  const std::vector<double> xs = cfg.x_grid();
  std::vector<double> levels(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) levels[k] = xs[k] * s.sn;

  std::vector<OracleEstimate> cf;
  std::vector<OracleEstimate> mc;
  if (cfg.oracle != OracleChoice::MC) cf = cf_grid(s, cfg, levels);
  if (cfg.oracle != OracleChoice::CF) mc = monte_carlo_tail(s.coeffs, s.model, levels, mc_settings(cfg));
  const double d = dnt(s.coeffs, s.t);

  std::ostringstream os;
  os << "x,x_over_sigma_n,P_oracle,oracle_err,oracle,R,g,R_plus_g,zone";
  if (cfg.oracle == OracleChoice::Both) os << ",P_mc,mc_err,cross_z";
  os << '\n';
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const OracleEstimate& main = cfg.oracle == OracleChoice::MC ? mc[k] : cf[k];
    const double tail = tail_term(s.coeffs, s.model, xs[k]).value;
    const double gauss = std_normal_sf(xs[k]);
    const double big_r = tail / main.value;
    const double g = gauss / main.value;
    os << num(levels[k]) << ',' << num(xs[k]) << ',' << num(main.value) << ',' << num(main.error)
       << ',' << to_string(main.method) << ',' << num(big_r) << ',' << num(g) << ','
       << num(big_r + g) << ',' << to_string(classify_zone_from_dnt(xs[k], d, cfg.band));
    if (cfg.oracle == OracleChoice::Both) {
      const double combined = std::hypot(cf[k].error, mc[k].error);
      const double diff = std::abs(cf[k].value - mc[k].value);
      os << ',' << num(mc[k].value) << ',' << num(mc[k].error) << ','
         << num(combined > 0.0 ? diff / combined : (diff == 0.0 ? 0.0 : INFINITY));
    }
    os << '\n';
  }
  return os.str();
}

std::string run_zone_report(const StudyConfig& cfg) {
  const Setup s = make_setup(cfg);
  const double d_t = dnt(s.coeffs, s.t);
  const double d_p = dnt(s.coeffs, s.p);
  const ZoneThresholds th = mixed_zone_thresholds(s.coeffs, s.t, cfg.a, cfg.b);
  const double conservative = conservative_ld_threshold(s.coeffs, s.t);
  const double frolov = md_threshold_frolov(s.coeffs, s.p);
  const double boundary = std::sqrt(2.0 * -std::log(d_t));

  std::ostringstream os;
  os << "x_over_sigma_n,zone,boundary,x_moderate,x_large,c_moderate,c_large,reference_constant,"
        "conservative_ld,md_frolov,D_nt,D_np\n";
  for (double x : cfg.x_grid()) {
    os << num(x) << ',' << to_string(classify_zone_from_dnt(x, d_t, cfg.band)) << ','
       << num(boundary) << ',' << num(th.x_moderate) << ',' << num(th.x_large) << ','
       << opt_num(th.c_moderate) << ',' << opt_num(th.c_large) << ','
       << num(th.reference_constant) << ',' << num(conservative) << ',' << num(frolov) << ','
       << num(d_t) << ',' << num(d_p) << '\n';
  }
  return os.str();
}

std::string run_var_es(const StudyConfig& cfg) {
  const Setup s = make_setup(cfg);
  std::vector<RiskReport> reports;
  std::vector<std::optional<double>> closed;
  std::vector<double> levels;
  for (double alpha : cfg.alphas) {
    reports.push_back(var_solve(s.coeffs, s.model, alpha));
    try {
      closed.emplace_back(var_closed_form(s.coeffs, s.model, alpha, cfg.a).var_quantile);
    } catch (const RegimeError&) {
      closed.emplace_back();
    }
    levels.push_back(reports.back().var_quantile);
  }

  std::vector<OracleEstimate> oracle;
  if (cfg.oracle == OracleChoice::MC)
    oracle = monte_carlo_tail(s.coeffs, s.model, levels, mc_settings(cfg));
  else
    oracle = cf_grid(s, cfg, levels);

  std::ostringstream os;
  os << "alpha,method,var_x,var_quantile,es,es_over_var,residual,closed_form_quantile,"
        "es_regime,oracle_p,oracle_err,oracle_ratio\n";
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const RiskReport& rep = reports[k];
    os << num(rep.alpha) << ',' << to_string(rep.method) << ',' << num(rep.var_x) << ','
       << num(rep.var_quantile) << ',' << num(rep.es) << ',' << num(rep.es / rep.var_quantile)
       << ',' << num(rep.residual) << ',' << opt_num(closed[k]) << ','
       << (rep.es_outside_regime ? "outside_tail_regime" : "tail_regime") << ','
       << num(oracle[k].value) << ',' << num(oracle[k].error) << ','
       << num(oracle[k].value / rep.alpha) << '\n';
  }
  return os.str();
}

std::string run_coefficients(const StudyConfig& cfg) {
  const Setup s = make_setup(cfg);
  std::ostringstream os;
  write_csv(os, s.coeffs);
  return os.str();
}

std::string run_functional(const StudyConfig& cfg) {
  cfg.validate();
  const StudentT model(cfg.nu, cfg.p);
  const LevelReading reading = cfg.linear_level ? LevelReading::LinearLog : LevelReading::SquaredLog;
  const FunctionalZone zone = functional_md_level(cfg.r, model.moment_order());
  const double top = std::min(1.5, zone.level_bound(std::max<std::size_t>(cfg.n, 2), reading));
  std::vector<double> xs;
  for (int k = 0; k <= 6; ++k) xs.push_back(top * k / 6.0);

  FunctionalSimSettings fs;
  fs.nsamples = cfg.functional_samples;
  fs.seed = cfg.seed;
  fs.streams = cfg.mc_streams;
  fs.threads = cfg.threads;
  fs.trunc_tol = cfg.functional_trunc_tol;
  fs.reading = reading;
  const FunctionalTailResult res = simulate_functional_tail(cfg.r, cfg.n, cfg.tau, model, xs, fs);

  std::ostringstream os;
  os << "x,p_hat,stderr,gaussian,ratio\n";
  for (const FunctionalTailPoint& pt : res.points) {
    os << num(pt.x) << ',' << num(pt.p_hat) << ',' << num(pt.std_error) << ',' << num(pt.gaussian)
       << ',' << num(pt.ratio) << '\n';
  }
  return os.str();
}

}  // namespace lindev

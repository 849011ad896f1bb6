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
#include "lindev/lindev.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "lindev/bounds.hpp"
#include "lindev/coefficients.hpp"
#include "lindev/deviation.hpp"
#include "lindev/error.hpp"
#include "lindev/functionals.hpp"
#include "lindev/innovation.hpp"
#include "lindev/oracle.hpp"
#include "lindev/risk.hpp"
#include "lindev/special_math.hpp"
#include "lindev/study.hpp"

struct lindev_coeffs {
  lindev::CoefficientArray impl;
};
struct lindev_model {
  std::unique_ptr<lindev::InnovationModel> impl;
};
struct lindev_study {
  lindev::StudyConfig impl;
};

namespace {

thread_local std::string g_last_error;

struct IoError : lindev::Error {
  using lindev::Error::Error;
};

template <class F>
lindev_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return LINDEV_OK;
  } catch (const lindev::DegenerateError& e) {
    g_last_error = e.what();
    return LINDEV_E_DEGENERATE;
  } catch (const lindev::RegimeError& e) {
    g_last_error = e.what();
    return LINDEV_E_REGIME;
  } catch (const lindev::DomainError& e) {
    g_last_error = e.what();
    return LINDEV_E_DOMAIN;
  } catch (const lindev::ConvergenceError& e) {
    g_last_error = e.what();
    return LINDEV_E_CONVERGENCE;
  } catch (const lindev::InsufficientSamplesError& e) {
    g_last_error = e.what();
    return LINDEV_E_INSUFFICIENT;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return LINDEV_E_IO;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LINDEV_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LINDEV_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return LINDEV_E_INTERNAL;
  }
}

lindev_status null_arg(const char* who) {
  g_last_error = std::string(who) + ": null argument";
  return LINDEV_E_NULL;
}

#define LINDEV_REQUIRE(cond) \
  if (!(cond)) return null_arg(__func__)

lindev_zone to_c(lindev::Zone z) {
  switch (z) {
    case lindev::Zone::Moderate: return LINDEV_ZONE_MODERATE;
    case lindev::Zone::Boundary: return LINDEV_ZONE_BOUNDARY;
    case lindev::Zone::Large: return LINDEV_ZONE_LARGE;
  }
  return LINDEV_ZONE_BOUNDARY;
}

lindev_oracle_method to_c(lindev::OracleMethod m) {
  switch (m) {
    case lindev::OracleMethod::CFInversion: return LINDEV_ORACLE_CF;
    case lindev::OracleMethod::MonteCarlo: return LINDEV_ORACLE_MC;
    case lindev::OracleMethod::ConditionalMonteCarlo: return LINDEV_ORACLE_CMC;
  }
  return LINDEV_ORACLE_CF;
}

lindev_estimate to_c(const lindev::OracleEstimate& e) {
  return {e.x, e.value, e.error, to_c(e.method), e.underflow ? 1 : 0};
}

lindev_risk_report to_c(const lindev::RiskReport& r) {
  return {r.alpha,
          r.var_x,
          r.var_quantile,
          r.es,
          r.method == lindev::RiskMethod::ClosedFormTail ? LINDEV_RISK_CLOSED_FORM_TAIL
                                                         : LINDEV_RISK_ROOT_SOLVE_MIXED,
          r.residual,
          r.es_outside_regime ? 1 : 0};
}

lindev::RiskReport from_c(const lindev_risk_report& r) {
  lindev::RiskReport out;
  out.alpha = r.alpha;
  out.var_x = r.var_x;
  out.var_quantile = r.var_quantile;
  out.es = r.es;
  out.method = r.method == LINDEV_RISK_CLOSED_FORM_TAIL ? lindev::RiskMethod::ClosedFormTail
                                                        : lindev::RiskMethod::RootSolveMixed;
  out.residual = r.residual;
  out.es_outside_regime = r.es_outside_regime != 0;
  return out;
}

lindev::TruncationPolicy policy(double rel_tol, int64_t index_cap) {
  lindev::TruncationPolicy p;
  if (rel_tol > 0.0) p.rel_tol = rel_tol;
  if (index_cap > 0) p.index_cap = index_cap;
  return p;
}

lindev_coeffs* wrap(lindev::CoefficientArray a) { return new lindev_coeffs{std::move(a)}; }

lindev::MonteCarloSettings mc_settings(size_t nsamples, uint64_t seed, size_t streams) {
  lindev::MonteCarloSettings mc;
  mc.nsamples = nsamples;
  mc.seed = seed;
  if (streams > 0) mc.streams = streams;
  return mc;
}

double parse_double(const std::string& key, const char* value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != std::string(value).size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw lindev::DomainError("study: '" + key + "' expects a number, got '" + value + "'");
  }
}

unsigned long long parse_count(const std::string& key, const char* value) {
  const double v = parse_double(key, value);
  if (!(v >= 0.0) || v != static_cast<double>(static_cast<unsigned long long>(v)))
    throw lindev::DomainError("study: '" + key + "' expects a nonnegative integer, got '" + value + "'");
  return static_cast<unsigned long long>(v);
}

}  // namespace

extern "C" {

const char* lindev_last_error(void) { return g_last_error.c_str(); }
const char* lindev_version(void) { return "1.0.0"; }

double lindev_std_normal_sf(double x) { return lindev::std_normal_sf(x); }

lindev_status lindev_std_normal_quantile(double p, double* out) {
  LINDEV_REQUIRE(out);
  return guard([&] { *out = lindev::std_normal_quantile(p); });
}

lindev_status lindev_log_gamma(double x, double* out) {
  LINDEV_REQUIRE(out);
  return guard([&] { *out = lindev::log_gamma(x); });
}

lindev_status lindev_bessel_k(double order, double z, double* out) {
  LINDEV_REQUIRE(out);
  return guard([&] { *out = lindev::bessel_k(order, z); });
}

lindev_status lindev_coeffs_iid(size_t n, lindev_coeffs** out) {
  LINDEV_REQUIRE(out);
  return guard([&] { *out = wrap(lindev::iid_weights(n)); });
}

lindev_status lindev_coeffs_regression(const double* alphas, size_t count, lindev_coeffs** out) {
  LINDEV_REQUIRE(out && (alphas || count == 0));
  return guard([&] { *out = wrap(lindev::regression_weights({alphas, count})); });
}

lindev_status lindev_coeffs_kernel(const double* design, size_t count, double x, double bandwidth,
                                   lindev_kernel kernel, lindev_coeffs** out) {
  LINDEV_REQUIRE(out && (design || count == 0));
  return guard([&] {
    lindev::Kernel k;
    switch (kernel) {
      case LINDEV_KERNEL_BOX: k = lindev::box_kernel; break;
      case LINDEV_KERNEL_GAUSSIAN: k = lindev::gaussian_kernel; break;
      case LINDEV_KERNEL_EPANECHNIKOV: k = lindev::epanechnikov_kernel; break;
      default: throw lindev::DomainError("unknown kernel");
    }
    *out = wrap(lindev::kernel_weights({design, count}, x, bandwidth, k));
  });
}

lindev_status lindev_coeffs_from_weights(const double* weights, size_t count, lindev_coeffs** out) {
  LINDEV_REQUIRE(out && (weights || count == 0));
  return guard([&] {
    *out = wrap(lindev::CoefficientArray(1, std::vector<double>(weights, weights + count), 0.0,
                                         {"user", {}}));
  });
}

lindev_status lindev_coeffs_ma_regvar(double r, size_t n, double rel_tol, int64_t index_cap,
                                      lindev_coeffs** out) {
  LINDEV_REQUIRE(out);
  return guard([&] {
    *out = wrap(lindev::ma_window_coeffs(lindev::regvar_coeffs(r), n, policy(rel_tol, index_cap)));
  });
}

lindev_status lindev_coeffs_ma_farima(double d, size_t n, double rel_tol, int64_t index_cap,
                                      lindev_coeffs** out) {
  LINDEV_REQUIRE(out);
  return guard([&] {
    *out = wrap(lindev::ma_window_coeffs(lindev::farima_coeffs(d), n, policy(rel_tol, index_cap)));
  });
}

lindev_status lindev_coeffs_normalize(const lindev_coeffs* c, double sigma2, lindev_coeffs** out) {
  LINDEV_REQUIRE(c && out);
  return guard([&] { *out = wrap(lindev::normalize_unit_variance(c->impl, sigma2)); });
}

lindev_status lindev_coeffs_read_csv(const char* path, lindev_coeffs** out) {
  LINDEV_REQUIRE(path && out);
  return guard([&] {
    std::ifstream in(path);
    if (!in) throw IoError(std::string("cannot open ") + path);
    *out = wrap(lindev::read_csv(in));
  });
}

lindev_status lindev_coeffs_write_csv(const lindev_coeffs* c, const char* path) {
  LINDEV_REQUIRE(c && path);
  return guard([&] {
    std::ofstream os(path);
    if (!os) throw IoError(std::string("cannot open ") + path);
    lindev::write_csv(os, c->impl);
    if (!os) throw IoError(std::string("write failed: ") + path);
  });
}

size_t lindev_coeffs_size(const lindev_coeffs* c) { return c ? c->impl.size() : 0; }
int64_t lindev_coeffs_first_index(const lindev_coeffs* c) { return c ? c->impl.first_index() : 0; }

size_t lindev_coeffs_weights(const lindev_coeffs* c, double* buf, size_t capacity) {
  if (!c || !buf) return 0;
  const size_t k = std::min(capacity, c->impl.size());
  for (size_t i = 0; i < k; ++i) buf[i] = c->impl[i];
  return k;
}

double lindev_coeffs_truncation_bound(const lindev_coeffs* c) {
  return c ? c->impl.truncation_l2_bound() : 0.0;
}

void lindev_coeffs_free(lindev_coeffs* c) { delete c; }

lindev_status lindev_model_student_t(double nu, double moment_order, lindev_model** out) {
  LINDEV_REQUIRE(out);
  return guard([&] {
    *out = new lindev_model{std::make_unique<lindev::StudentT>(nu, moment_order > 0.0 ? moment_order : 0.0)};
  });
}

lindev_status lindev_model_uniform(double half_width, lindev_model** out) {
  LINDEV_REQUIRE(out);
  return guard([&] { *out = new lindev_model{std::make_unique<lindev::UniformInnovation>(half_width)}; });
}

double lindev_model_sigma2(const lindev_model* m) { return m ? m->impl->sigma2() : 0.0; }
double lindev_model_tail_exponent(const lindev_model* m) { return m ? m->impl->tail_exponent() : 0.0; }
double lindev_model_tail_constant(const lindev_model* m) { return m ? m->impl->tail_constant() : 0.0; }
double lindev_model_survival(const lindev_model* m, double x) { return m ? m->impl->survival(x) : 0.0; }
void lindev_model_free(lindev_model* m) { delete m; }

lindev_status lindev_power_sum(const lindev_coeffs* c, double t, double* out) {
  LINDEV_REQUIRE(c && out);
  return guard([&] { *out = lindev::power_sum(c->impl, t); });
}

lindev_status lindev_dnt(const lindev_coeffs* c, double t, double* out) {
  LINDEV_REQUIRE(c && out);
  return guard([&] { *out = lindev::dnt(c->impl, t); });
}

lindev_status lindev_sigma_n(const lindev_coeffs* c, double sigma2, double* out) {
  LINDEV_REQUIRE(c && out);
  return guard([&] { *out = lindev::sigma_n(c->impl, sigma2); });
}

lindev_status lindev_classify_zone(double x, const lindev_coeffs* c, double t, double band, lindev_zone* out) {
  LINDEV_REQUIRE(c && out);
  return guard([&] {
    *out = to_c(lindev::classify_zone(x, c->impl, t, band < 0.0 ? lindev::kDefaultZoneBand : band));
  });
}

lindev_status lindev_tail_term(const lindev_coeffs* c, const lindev_model* m, double x, double* value,
                               double* truncation_error_bound) {
  LINDEV_REQUIRE(c && m && value);
  return guard([&] {
    const lindev::TailTerm tt = lindev::tail_term(c->impl, *m->impl, x);
    *value = tt.value;
    if (truncation_error_bound) *truncation_error_bound = tt.truncation_error_bound;
  });
}

lindev_status lindev_deviation_approx(const lindev_coeffs* c, const lindev_model* m, double x,
                                      lindev_deviation* out) {
  LINDEV_REQUIRE(c && m && out);
  return guard([&] {
    const lindev::DeviationApprox d = lindev::deviation_approx(c->impl, *m->impl, x);
    *out = {d.x, d.gaussian_term, d.tail_term, d.total, to_c(d.zone), d.sigma_n};
  });
}

lindev_status lindev_mixed_zone_thresholds(const lindev_coeffs* c, double t, double a, double b,
                                           lindev_thresholds* out) {
  LINDEV_REQUIRE(c && out);
  return guard([&] {
    const lindev::ZoneThresholds z = lindev::mixed_zone_thresholds(c->impl, t, a, b);
    *out = {z.x_large, z.x_moderate, z.c_large.has_value() ? 1 : 0, z.c_large.value_or(0.0),
            z.c_moderate.value_or(0.0), z.reference_constant};
  });
}

lindev_status lindev_conservative_ld_threshold(const lindev_coeffs* c, double t, double* out) {
  LINDEV_REQUIRE(c && out);
  return guard([&] { *out = lindev::conservative_ld_threshold(c->impl, t); });
}

lindev_status lindev_md_threshold_frolov(const lindev_coeffs* c, double p, double* out) {
  LINDEV_REQUIRE(c && out);
  return guard([&] { *out = lindev::md_threshold_frolov(c->impl, p); });
}

lindev_status lindev_var_solve(const lindev_coeffs* c, const lindev_model* m, double alpha,
                               lindev_risk_report* out) {
  LINDEV_REQUIRE(c && m && out);
  return guard([&] { *out = to_c(lindev::var_solve(c->impl, *m->impl, alpha)); });
}

lindev_status lindev_var_closed_form(const lindev_coeffs* c, const lindev_model* m, double alpha, double a,
                                     lindev_risk_report* out) {
  LINDEV_REQUIRE(c && m && out);
  return guard([&] {
    *out = to_c(lindev::var_closed_form(c->impl, *m->impl, alpha, a > 0.0 ? a : lindev::kDefaultTailRegimeA));
  });
}

lindev_status lindev_expected_shortfall(const lindev_risk_report* r, double t, double* out) {
  LINDEV_REQUIRE(r && out);
  return guard([&] { *out = lindev::expected_shortfall(from_c(*r), t); });
}

lindev_status lindev_chi(double v, double r, double* out) {
  LINDEV_REQUIRE(out);
  return guard([&] { *out = lindev::chi(v, r); });
}

lindev_status lindev_omega_rho(double r, double* omega, double* rho) {
  LINDEV_REQUIRE(omega && rho);
  return guard([&] {
    const lindev::OmegaRho w = lindev::omega_rho(r);
    *omega = w.omega;
    *rho = w.rho;
  });
}

lindev_status lindev_functional_md_level(double r, double p, lindev_functional_zone* out) {
  LINDEV_REQUIRE(out);
  return guard([&] {
    const lindev::FunctionalZone z = lindev::functional_md_level(r, p);
    *out = {z.r, z.p, z.omega, z.rho, z.c_max, z.full_range ? 1 : 0};
  });
}

lindev_status lindev_simulate_functional_tail(double r, size_t n, double tau, const lindev_model* m,
                                              const double* xs, size_t count, size_t nsamples, uint64_t seed,
                                              int linear_level, lindev_functional_point* out) {
  LINDEV_REQUIRE(m && xs && out);
  return guard([&] {
    lindev::FunctionalSimSettings fs;
    fs.nsamples = nsamples;
    fs.seed = seed;
    fs.reading = linear_level ? lindev::LevelReading::LinearLog : lindev::LevelReading::SquaredLog;
    const lindev::FunctionalTailResult res =
        lindev::simulate_functional_tail(r, n, tau, *m->impl, {xs, count}, fs);
    for (size_t k = 0; k < count; ++k) {
      const auto& p = res.points[k];
      out[k] = {p.x, p.p_hat, p.std_error, p.gaussian, p.ratio};
    }
  });
}

double lindev_student_t_cf(double nu, double y) {
  try {
    return lindev::student_t_cf(nu, y);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

lindev_status lindev_sum_cf(const lindev_coeffs* c, double nu, double y, double* out) {
  LINDEV_REQUIRE(c && out);
  return guard([&] { *out = lindev::sum_cf(c->impl, nu, y); });
}

lindev_status lindev_cf_invert_tail(const lindev_coeffs* c, double nu, double x, double tol, size_t max_panels,
                                    lindev_estimate* out) {
  LINDEV_REQUIRE(c && out);
  return guard([&] {
    lindev::QuadratureSettings q;
    if (tol > 0.0) q.tol = tol;
    if (max_panels > 0) q.max_panels = max_panels;
    *out = to_c(lindev::cf_invert_tail(c->impl, nu, x, q));
  });
}

lindev_status lindev_monte_carlo_tail(const lindev_coeffs* c, const lindev_model* m, const double* xs,
                                      size_t count, size_t nsamples, uint64_t seed, size_t streams,
                                      lindev_estimate* out) {
  LINDEV_REQUIRE(c && m && xs && out);
  return guard([&] {
    const auto est = lindev::monte_carlo_tail(c->impl, *m->impl, {xs, count}, mc_settings(nsamples, seed, streams));
    for (size_t k = 0; k < count; ++k) out[k] = to_c(est[k]);
  });
}

lindev_status lindev_conditional_mc_tail(const lindev_coeffs* c, const lindev_model* m, const double* xs,
                                         size_t count, size_t nsamples, uint64_t seed, size_t streams,
                                         lindev_estimate* out) {
  LINDEV_REQUIRE(c && m && xs && out);
  return guard([&] {
    const auto est =
        lindev::conditional_mc_tail(c->impl, *m->impl, {xs, count}, mc_settings(nsamples, seed, streams));
    for (size_t k = 0; k < count; ++k) out[k] = to_c(est[k]);
  });
}

lindev_status lindev_fuk_nagaev_bound(const lindev_fuk_nagaev* in, double* out) {
  LINDEV_REQUIRE(in && out);
  return guard([&] { *out = lindev::fuk_nagaev_bound({in->m, in->x, in->y, in->A_n, in->B_n2}); });
}

lindev_status lindev_fuk_nagaev_for_model(const lindev_coeffs* c, const lindev_model* m, double order, double x,
                                          double y, lindev_fuk_nagaev* inputs, double* out) {
  LINDEV_REQUIRE(c && m && out);
  return guard([&] {
    const lindev::FukNagaevEvaluation ev = lindev::fuk_nagaev_for_model(c->impl, *m->impl, order, x, y);
    if (inputs) *inputs = {ev.inputs.m, ev.inputs.x, ev.inputs.y, ev.inputs.A_n, ev.inputs.B_n2};
    *out = ev.bound;
  });
}

lindev_status lindev_frolov_quantities(const lindev_coeffs* c, const lindev_model* m, double x, double p,
                                       double eps, lindev_frolov* out) {
  LINDEV_REQUIRE(c && m && out);
  return guard([&] {
    const lindev::FrolovQuantities f = lindev::frolov_quantities(c->impl, *m->impl, x, p, eps);
    *out = {f.L_np, f.lambda, f.zone_stat};
  });
}

lindev_status lindev_study_new(lindev_study** out) {
  LINDEV_REQUIRE(out);
  return guard([&] { *out = new lindev_study{}; });
}

lindev_status lindev_study_set(lindev_study* s, const char* key, const char* value) {
  LINDEV_REQUIRE(s && key && value);
  return guard([&] {
    lindev::StudyConfig& c = s->impl;
    const std::string k = key;
    if (k == "nu") c.nu = parse_double(k, value);
    else if (k == "r") c.r = parse_double(k, value);
    else if (k == "n") c.n = parse_count(k, value);
    else if (k == "x-min") c.x_min = parse_double(k, value);
    else if (k == "x-max") c.x_max = parse_double(k, value);
    else if (k == "x-points") c.x_points = parse_count(k, value);
    else if (k == "oracle") c.oracle = lindev::parse_oracle_choice(value);
    else if (k == "mc-samples") c.mc_samples = parse_count(k, value);
    else if (k == "seed") c.seed = parse_count(k, value);
    else if (k == "quad-tol") c.quad_tol = parse_double(k, value);
    else if (k == "trunc-tol") c.trunc_tol = parse_double(k, value);
    else if (k == "t") c.t = parse_double(k, value);
    else if (k == "p") c.p = parse_double(k, value);
    else if (k == "a") c.a = parse_double(k, value);
    else if (k == "b") c.b = parse_double(k, value);
    else if (k == "band") c.band = parse_double(k, value);
    else if (k == "tau") c.tau = parse_double(k, value);
    else if (k == "functional-samples") c.functional_samples = parse_count(k, value);
    else if (k == "streams") c.mc_streams = parse_count(k, value);
    else if (k == "threads") c.threads = static_cast<unsigned>(parse_count(k, value));
    else if (k == "alpha") c.alphas.push_back(parse_double(k, value));
    else if (k == "clear-alpha") c.alphas.clear();
    else if (k == "level") {
      const std::string v = value;
      if (v != "squared" && v != "linear") throw lindev::DomainError("level must be squared or linear");
      c.linear_level = v == "linear";
    } else {
      throw lindev::DomainError("study: unknown key '" + k + "'");
    }
  });
}

void lindev_study_free(lindev_study* s) { delete s; }

lindev_status lindev_study_run(const lindev_study* s, lindev_report report, const char* path) {
  LINDEV_REQUIRE(s && path);
  return guard([&] {
    std::string csv;
    switch (report) {
      case LINDEV_REPORT_FIGURE1: csv = lindev::run_figure1(s->impl); break;
      case LINDEV_REPORT_ZONES: csv = lindev::run_zone_report(s->impl); break;
      case LINDEV_REPORT_VAR_ES: csv = lindev::run_var_es(s->impl); break;
      case LINDEV_REPORT_COEFFS: csv = lindev::run_coefficients(s->impl); break;
      case LINDEV_REPORT_FUNCTIONAL: csv = lindev::run_functional(s->impl); break;
      default: throw lindev::DomainError("unknown report");
    }
    if (std::string(path) == "-") {
      std::cout << csv << std::flush;
      if (!std::cout) throw IoError("write to stdout failed");
      return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError(std::string("cannot open ") + path);
    os << csv;
    os.close();
    if (!os) throw IoError(std::string("write failed: ") + path);
  });
}

}  // extern "C"

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
#ifndef LINDEV_H
#define LINDEV_H

/* C interface to lindev. Objects are opaque handles owned by the caller and
 * released with the matching *_free function. Every fallible call returns a
 * lindev_status; on failure lindev_last_error() describes the problem for
 * the calling thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define LINDEV_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define LINDEV_API __attribute__((visibility("default")))
#else
#  define LINDEV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lindev_status {
  LINDEV_OK = 0,
  LINDEV_E_NULL = 1,          /* null handle or output pointer */
  LINDEV_E_DOMAIN = 2,        /* argument outside the domain */
  LINDEV_E_DEGENERATE = 3,    /* all weights zero */
  LINDEV_E_REGIME = 4,        /* closed form requested outside its regime */
  LINDEV_E_CONVERGENCE = 5,   /* quadrature, bracketing or truncation failed */
  LINDEV_E_INSUFFICIENT = 6,  /* too few Monte Carlo samples */
  LINDEV_E_IO = 7,
  LINDEV_E_INTERNAL = 8
} lindev_status;

typedef struct lindev_coeffs lindev_coeffs;
typedef struct lindev_model lindev_model;
typedef struct lindev_study lindev_study;

LINDEV_API const char* lindev_last_error(void);
LINDEV_API const char* lindev_version(void);

/* ---- special functions ---- */
LINDEV_API double lindev_std_normal_sf(double x);
LINDEV_API lindev_status lindev_std_normal_quantile(double p, double* out);
LINDEV_API lindev_status lindev_log_gamma(double x, double* out);
LINDEV_API lindev_status lindev_bessel_k(double order, double z, double* out);

/* ---- coefficients ---- */
typedef enum lindev_kernel { LINDEV_KERNEL_BOX, LINDEV_KERNEL_GAUSSIAN, LINDEV_KERNEL_EPANECHNIKOV } lindev_kernel;

LINDEV_API lindev_status lindev_coeffs_iid(size_t n, lindev_coeffs** out);
LINDEV_API lindev_status lindev_coeffs_regression(const double* alphas, size_t count, lindev_coeffs** out);
LINDEV_API lindev_status lindev_coeffs_kernel(const double* design, size_t count, double x, double bandwidth,
                                              lindev_kernel kernel, lindev_coeffs** out);
LINDEV_API lindev_status lindev_coeffs_from_weights(const double* weights, size_t count, lindev_coeffs** out);
/* Window sums of a_i = (1+i)^{-r} over n steps; rel_tol and index_cap <= 0 select defaults. */
LINDEV_API lindev_status lindev_coeffs_ma_regvar(double r, size_t n, double rel_tol, int64_t index_cap,
                                                 lindev_coeffs** out);
/* Window sums of FARIMA(0,d,0) weights over n steps. */
LINDEV_API lindev_status lindev_coeffs_ma_farima(double d, size_t n, double rel_tol, int64_t index_cap,
                                                 lindev_coeffs** out);
LINDEV_API lindev_status lindev_coeffs_normalize(const lindev_coeffs* c, double sigma2, lindev_coeffs** out);
LINDEV_API lindev_status lindev_coeffs_read_csv(const char* path, lindev_coeffs** out);
LINDEV_API lindev_status lindev_coeffs_write_csv(const lindev_coeffs* c, const char* path);
LINDEV_API size_t lindev_coeffs_size(const lindev_coeffs* c);
LINDEV_API int64_t lindev_coeffs_first_index(const lindev_coeffs* c);
/* Copies min(size, capacity) weights into buf; returns the number copied. */
LINDEV_API size_t lindev_coeffs_weights(const lindev_coeffs* c, double* buf, size_t capacity);
LINDEV_API double lindev_coeffs_truncation_bound(const lindev_coeffs* c);
LINDEV_API void lindev_coeffs_free(lindev_coeffs* c);

/* ---- innovation models ---- */
/* moment_order <= 0 selects (2 + nu) / 2. */
LINDEV_API lindev_status lindev_model_student_t(double nu, double moment_order, lindev_model** out);
LINDEV_API lindev_status lindev_model_uniform(double half_width, lindev_model** out);
LINDEV_API double lindev_model_sigma2(const lindev_model* m);
LINDEV_API double lindev_model_tail_exponent(const lindev_model* m);
LINDEV_API double lindev_model_tail_constant(const lindev_model* m);
LINDEV_API double lindev_model_survival(const lindev_model* m, double x);
LINDEV_API void lindev_model_free(lindev_model* m);

/* ---- deviation ---- */
typedef enum lindev_zone { LINDEV_ZONE_MODERATE, LINDEV_ZONE_BOUNDARY, LINDEV_ZONE_LARGE } lindev_zone;

typedef struct lindev_deviation {
  double x;
  double gaussian_term;
  double tail_term;
  double total;
  lindev_zone zone;
  double sigma_n;
} lindev_deviation;

typedef struct lindev_thresholds {
  double x_large;
  double x_moderate;
  int has_scaled; /* c_large and c_moderate are set */
  double c_large;
  double c_moderate;
  double reference_constant;
} lindev_thresholds;

LINDEV_API lindev_status lindev_power_sum(const lindev_coeffs* c, double t, double* out);
LINDEV_API lindev_status lindev_dnt(const lindev_coeffs* c, double t, double* out);
LINDEV_API lindev_status lindev_sigma_n(const lindev_coeffs* c, double sigma2, double* out);
/* band < 0 selects the default 0.05. */
LINDEV_API lindev_status lindev_classify_zone(double x, const lindev_coeffs* c, double t, double band,
                                              lindev_zone* out);
LINDEV_API lindev_status lindev_tail_term(const lindev_coeffs* c, const lindev_model* m, double x,
                                          double* value, double* truncation_error_bound);
LINDEV_API lindev_status lindev_deviation_approx(const lindev_coeffs* c, const lindev_model* m, double x,
                                                 lindev_deviation* out);
LINDEV_API lindev_status lindev_mixed_zone_thresholds(const lindev_coeffs* c, double t, double a, double b,
                                                      lindev_thresholds* out);
LINDEV_API lindev_status lindev_conservative_ld_threshold(const lindev_coeffs* c, double t, double* out);
LINDEV_API lindev_status lindev_md_threshold_frolov(const lindev_coeffs* c, double p, double* out);

/* ---- risk ---- */
typedef enum lindev_risk_method { LINDEV_RISK_CLOSED_FORM_TAIL, LINDEV_RISK_ROOT_SOLVE_MIXED } lindev_risk_method;

typedef struct lindev_risk_report {
  double alpha;
  double var_x;
  double var_quantile;
  double es;
  lindev_risk_method method;
  double residual;
  int es_outside_regime;
} lindev_risk_report;

LINDEV_API lindev_status lindev_var_solve(const lindev_coeffs* c, const lindev_model* m, double alpha,
                                          lindev_risk_report* out);
/* a <= 0 selects the default 1.5. */
LINDEV_API lindev_status lindev_var_closed_form(const lindev_coeffs* c, const lindev_model* m, double alpha,
                                                double a, lindev_risk_report* out);
LINDEV_API lindev_status lindev_expected_shortfall(const lindev_risk_report* r, double t, double* out);

/* ---- functionals ---- */
typedef struct lindev_functional_zone {
  double r;
  double p;
  double omega;
  double rho;
  double c_max;
  int full_range;
} lindev_functional_zone;

typedef struct lindev_functional_point {
  double x;
  double p_hat;
  double std_error;
  double gaussian;
  double ratio;
} lindev_functional_point;

LINDEV_API lindev_status lindev_chi(double v, double r, double* out);
LINDEV_API lindev_status lindev_omega_rho(double r, double* omega, double* rho);
LINDEV_API lindev_status lindev_functional_md_level(double r, double p, lindev_functional_zone* out);
/* Fills out[0..count) for the levels xs[0..count). linear_level selects x <= c ln n. */
LINDEV_API lindev_status lindev_simulate_functional_tail(double r, size_t n, double tau, const lindev_model* m,
                                                         const double* xs, size_t count, size_t nsamples,
                                                         uint64_t seed, int linear_level,
                                                         lindev_functional_point* out);

/* ---- oracles ---- */
typedef enum lindev_oracle_method { LINDEV_ORACLE_CF, LINDEV_ORACLE_MC, LINDEV_ORACLE_CMC } lindev_oracle_method;

typedef struct lindev_estimate {
  double x;
  double value;
  double error;
  lindev_oracle_method method;
  int underflow;
} lindev_estimate;

LINDEV_API double lindev_student_t_cf(double nu, double y);
LINDEV_API lindev_status lindev_sum_cf(const lindev_coeffs* c, double nu, double y, double* out);
/* tol <= 0 selects 1e-9; max_panels 0 selects 1e6. */
LINDEV_API lindev_status lindev_cf_invert_tail(const lindev_coeffs* c, double nu, double x, double tol,
                                               size_t max_panels, lindev_estimate* out);
/* One simulation for all levels xs[0..count); streams 0 selects 16. */
LINDEV_API lindev_status lindev_monte_carlo_tail(const lindev_coeffs* c, const lindev_model* m,
                                                 const double* xs, size_t count, size_t nsamples,
                                                 uint64_t seed, size_t streams, lindev_estimate* out);
LINDEV_API lindev_status lindev_conditional_mc_tail(const lindev_coeffs* c, const lindev_model* m,
                                                    const double* xs, size_t count, size_t nsamples,
                                                    uint64_t seed, size_t streams, lindev_estimate* out);

/* ---- bounds ---- */
typedef struct lindev_fuk_nagaev {
  double m;
  double x;
  double y;
  double A_n;
  double B_n2;
} lindev_fuk_nagaev;

typedef struct lindev_frolov {
  double L_np;
  double lambda;
  double zone_stat;
} lindev_frolov;

LINDEV_API lindev_status lindev_fuk_nagaev_bound(const lindev_fuk_nagaev* in, double* out);
/* Fills inputs (may be null) with the evaluated A_n and B_n2. */
LINDEV_API lindev_status lindev_fuk_nagaev_for_model(const lindev_coeffs* c, const lindev_model* m,
                                                     double order, double x, double y, lindev_fuk_nagaev* inputs,
                                                     double* out);
LINDEV_API lindev_status lindev_frolov_quantities(const lindev_coeffs* c, const lindev_model* m, double x,
                                                  double p, double eps, lindev_frolov* out);

/* ---- numerical study ---- */
/* A study configuration starts at the defaults. Keys match the CLI flags
 * without dashes: nu, r, n, x-min, x-max, x-points, oracle, mc-samples,
 * seed, quad-tol, trunc-tol, t, p, a, b, band, tau, functional-samples,
 * streams, threads, level (squared|linear). alpha appends to the alpha
 * list; clear-alpha empties it. */
LINDEV_API lindev_status lindev_study_new(lindev_study** out);
LINDEV_API lindev_status lindev_study_set(lindev_study* s, const char* key, const char* value);
LINDEV_API void lindev_study_free(lindev_study* s);

typedef enum lindev_report {
  LINDEV_REPORT_FIGURE1,
  LINDEV_REPORT_ZONES,
  LINDEV_REPORT_VAR_ES,
  LINDEV_REPORT_COEFFS,
  LINDEV_REPORT_FUNCTIONAL
} lindev_report;

/* Runs a report and writes the CSV to path ("-" for stdout). Nothing is
 * written if the run fails. */
LINDEV_API lindev_status lindev_study_run(const lindev_study* s, lindev_report report, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* LINDEV_H */

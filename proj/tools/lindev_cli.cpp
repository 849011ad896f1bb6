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
// Command line front end. Talks to the library only through lindev.h.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "lindev/lindev.h"

namespace {

struct Options {
  double nu = 3.0;
  double r = 0.9;
  long long n = 300;
  double x_min = 0.1;
  double x_max = 10.0;
  long long x_points = 60;
  std::string oracle = "cf";
  long long mc_samples = 100000;
  unsigned long long seed = 1;
  long long streams = 16;
  long long threads = 0;
  double quad_tol = 1e-9;
  double trunc_tol = 1e-2;
  double t = 0.0;
  double p = 0.0;
  double a = 1.5;
  double b = 1.3;
  double band = 0.05;
  std::vector<double> alphas;
  double tau = 0.0;
  long long functional_samples = 100000;
  std::string level = "squared";
  std::string out = "-";
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int exit_code(lindev_status s) {
  switch (s) {
    case LINDEV_OK: return 0;
    case LINDEV_E_CONVERGENCE:
    case LINDEV_E_INSUFFICIENT:
    case LINDEV_E_INTERNAL: return 3;
    default: return 2;
  }
}

void add_options(CLI::App& app, Options& o) {
  app.add_option("--nu", o.nu, "Student-t degrees of freedom (> 2)")->capture_default_str();
  app.add_option("--r", o.r, "decay exponent of a_i = (1+i)^-r, in (1/2, 1)")->capture_default_str();
  app.add_option("--n", o.n, "window length")->capture_default_str();
  app.add_option("--x-min", o.x_min, "smallest level, in units of sigma_n")->capture_default_str();
  app.add_option("--x-max", o.x_max, "largest level, in units of sigma_n")->capture_default_str();
  app.add_option("--x-points", o.x_points, "number of log-spaced levels")->capture_default_str();
  app.add_option("--oracle", o.oracle, "reference tail probability: cf, mc or both")
      ->check(CLI::IsMember({"cf", "mc", "both"}))
      ->capture_default_str();
  app.add_option("--mc-samples", o.mc_samples, "Monte Carlo sample count")->capture_default_str();
  app.add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();
  app.add_option("--streams", o.streams, "independent random streams; results depend on seed and streams")
      ->capture_default_str();
  app.add_option("--threads", o.threads, "worker threads, 0 for all cores; never changes results")
      ->capture_default_str();
  app.add_option("--quad-tol", o.quad_tol, "absolute tolerance of the inversion integral")->capture_default_str();
  app.add_option("--trunc-tol", o.trunc_tol,
                 "relative bound on the squared weight mass dropped from the infinite past")
      ->capture_default_str();
  app.add_option("--t", o.t, "tail exponent for zone classification (0: nu)")->capture_default_str();
  app.add_option("--p", o.p, "moment order (0: (2+nu)/2)")->capture_default_str();
  app.add_option("--a", o.a, "large deviation constant, > sqrt(2)")->capture_default_str();
  app.add_option("--b", o.b, "moderate deviation constant, < sqrt(2)")->capture_default_str();
  app.add_option("--band", o.band, "relative half-width of the zone boundary band")->capture_default_str();
  app.add_option("--alpha", o.alphas, "tail level for var-es; repeatable (default 1e-3)");
  app.add_option("--tau", o.tau, "indicator threshold for the functional demo")->capture_default_str();
  app.add_option("--functional-samples", o.functional_samples, "sample count for the functional demo")
      ->capture_default_str();
  app.add_option("--level", o.level, "functional level bound: squared (x^2 <= c ln n) or linear (x <= c ln n)")
      ->check(CLI::IsMember({"squared", "linear"}))
      ->capture_default_str();
  app.add_option("--out", o.out, "output CSV path, - for stdout")->capture_default_str();
}

lindev_status configure(lindev_study* s, const Options& o) {
  const std::vector<std::pair<const char*, std::string>> kv = {
      {"nu", fmt(o.nu)},
      {"r", fmt(o.r)},
      {"n", std::to_string(o.n)},
      {"x-min", fmt(o.x_min)},
      {"x-max", fmt(o.x_max)},
      {"x-points", std::to_string(o.x_points)},
      {"oracle", o.oracle},
      {"mc-samples", std::to_string(o.mc_samples)},
      {"seed", std::to_string(o.seed)},
      {"streams", std::to_string(o.streams)},
      {"threads", std::to_string(o.threads)},
      {"quad-tol", fmt(o.quad_tol)},
      {"trunc-tol", fmt(o.trunc_tol)},
      {"t", fmt(o.t)},
      {"p", fmt(o.p)},
      {"a", fmt(o.a)},
      {"b", fmt(o.b)},
      {"band", fmt(o.band)},
      {"tau", fmt(o.tau)},
      {"functional-samples", std::to_string(o.functional_samples)},
      {"level", o.level},
  };
  for (const auto& [key, value] : kv) {
    if (lindev_status st = lindev_study_set(s, key, value.c_str()); st != LINDEV_OK) return st;
  }
  if (!o.alphas.empty()) {
    if (lindev_status st = lindev_study_set(s, "clear-alpha", ""); st != LINDEV_OK) return st;
    for (double al : o.alphas)
      if (lindev_status st = lindev_study_set(s, "alpha", fmt(al).c_str()); st != LINDEV_OK) return st;
  }
  return LINDEV_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Tail approximations for weighted sums of heavy tailed innovations.\n"
      "The default study is a_i = (1+i)^-0.9, Student-t(3) innovations, n = 300.\n"
      "Levels are given in units of sigma_n; the default grid is 60 log-spaced\n"
      "points on [0.1, 10] sigma_n, wide enough to cover both the Gaussian and\n"
      "the heavy tail regimes."};
  app.set_config("--config", "", "flat key=value file; command line flags take precedence");
  app.require_subcommand(1);

  Options o;
  add_options(app, o);
  const std::map<std::string, lindev_report> reports = {
      {"figure1", LINDEV_REPORT_FIGURE1},
      {"zones", LINDEV_REPORT_ZONES},
      {"var-es", LINDEV_REPORT_VAR_ES},
      {"coeffs", LINDEV_REPORT_COEFFS},
      {"functional", LINDEV_REPORT_FUNCTIONAL},
  };
  app.add_subcommand("figure1",
                     "ratio curves R, g and R+g against a reference tail probability.\n"
                     "Columns: x,x_over_sigma_n,P_oracle,oracle_err,oracle,R,g,R_plus_g,zone\n"
                     "(plus P_mc,mc_err,cross_z with --oracle both)")
      ->fallthrough();
  app.add_subcommand("zones",
                     "zone of each level and the zone thresholds.\n"
                     "Columns: x_over_sigma_n,zone,boundary,x_moderate,x_large,c_moderate,c_large,\n"
                     "reference_constant,conservative_ld,md_frolov,D_nt,D_np")
      ->fallthrough();
  app.add_subcommand("var-es",
                     "value at risk and expected shortfall per --alpha, with the exceedance\n"
                     "probability of the VaR under the chosen oracle")
      ->fallthrough();
  app.add_subcommand("coeffs", "the window coefficients b_ni as index,weight rows")->fallthrough();
  app.add_subcommand("functional",
                     "empirical process H_n = sum I(X_i <= tau) - P(X <= tau): simulated tail\n"
                     "against the Gaussian on levels up to the admissible bound.\n"
                     "Columns: x,p_hat,stderr,gaussian,ratio")
      ->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  lindev_study* study = nullptr;
  lindev_status st = lindev_study_new(&study);
  if (st == LINDEV_OK) st = configure(study, o);
  if (st == LINDEV_OK) {
    const std::string name = app.get_subcommands().front()->get_name();
    st = lindev_study_run(study, reports.at(name), o.out.c_str());
  }
  lindev_study_free(study);
  if (st != LINDEV_OK) {
    std::cerr << "lindev: " << lindev_last_error() << '\n';
    return exit_code(st);
  }
  return 0;
}

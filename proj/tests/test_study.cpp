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
#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lindev/error.hpp"
#include "lindev/study.hpp"

using namespace lindev;
using doctest::Approx;

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
      if (header[k] == name) return k;
    FAIL("missing column " << name);
    return 0;
  }
  double num(std::size_t row, const std::string& name) const { return std::stod(rows[row][col(name)]); }
  const std::string& str(std::size_t row, const std::string& name) const { return rows[row][col(name)]; }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Table parse(const std::string& csv) {
  Table t;
  std::stringstream ss(csv);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (t.header.empty())
      t.header = split(line);
    else
      t.rows.push_back(split(line));
  }
  return t;
}

StudyConfig small_figure() {
  StudyConfig c;
  c.x_points = 12;
  return c;
}

}  // namespace

TEST_CASE("config defaults and validation") {
  StudyConfig c;
  CHECK(c.nu == 3.0);
  CHECK(c.r == 0.9);
  CHECK(c.n == 300);
  CHECK_NOTHROW(c.validate());
  const auto g = c.x_grid();
  REQUIRE(g.size() == 60);
  CHECK(g.front() == Approx(0.1));
  CHECK(g.back() == Approx(10.0));
  for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] / g[k - 1] == Approx(g[1] / g[0]).epsilon(1e-12));

  auto bad = c;
  bad.nu = 2.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = c;
  bad.alphas = {0.7};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = c;
  bad.x_min = 3.0;
  bad.x_max = 1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK(parse_oracle_choice("both") == OracleChoice::Both);
  CHECK(to_string(OracleChoice::MC) == "mc");
  CHECK_THROWS_AS(parse_oracle_choice("exact"), DomainError);
}

TEST_CASE("figure data") {
  const auto t = parse(run_figure1(small_figure()));
  REQUIRE(t.rows.size() == 12);
  for (const char* c : {"x", "x_over_sigma_n", "P_oracle", "oracle_err", "R", "g", "R_plus_g", "zone"}) CHECK(t.col(c) < t.header.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double xs = t.num(i, "x_over_sigma_n");
    const double R = t.num(i, "R"), g = t.num(i, "g");
    CHECK(t.num(i, "R_plus_g") == Approx(R + g).epsilon(1e-11));
    if (xs <= 0.5) {
      CHECK(g >= 0.9);
      CHECK(g <= 1.1);
    }
    if (xs >= 6.0) {
      CHECK(R >= 0.75);
      CHECK(R <= 1.25);
      CHECK(g < 0.5);
    }
  }
}

TEST_CASE("figure data with both oracles") {
  auto c = small_figure();
  c.x_points = 4;
  c.x_max = 3.0;
  c.oracle = OracleChoice::Both;
  c.mc_samples = 50'000;
  const auto t = parse(run_figure1(c));
  REQUIRE(t.rows.size() == 4);
  for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(std::abs(t.num(i, "cross_z")) < 4.0);
}

TEST_CASE("zone report") {
  StudyConfig c;
  c.x_points = 5;
  const auto t = parse(run_zone_report(c));
  REQUIRE(t.rows.size() == 5);
  CHECK(t.num(0, "reference_constant") == Approx(1.0));
  CHECK(std::abs(t.num(0, "boundary") / std::sqrt(std::log(300.0)) - 1.0) < 0.05);
  CHECK(t.str(0, "zone") == "moderate");
  CHECK(t.str(4, "zone") == "large");
  c.t = 4.0;
  CHECK(parse(run_zone_report(c)).num(0, "reference_constant") == Approx(std::sqrt(2.0)));

  StudyConfig big;
  big.x_points = 1;
  big.n = 1200;
  const double b300 = parse(run_zone_report(StudyConfig{})).num(0, "boundary");
  const double b1200 = parse(run_zone_report(big)).num(0, "boundary");
  CHECK(b1200 / b300 == Approx(std::sqrt(std::log(1200.0) / std::log(300.0))).epsilon(0.05));
}

TEST_CASE("risk table") {
  StudyConfig c;
  c.alphas = {1e-2, 5e-3, 1e-3, 5e-4, 1e-6};
  const auto t = parse(run_var_es(c));
  REQUIRE(t.rows.size() == 5);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.num(i, "es_over_var") == Approx(1.5).epsilon(1e-12));
    if (i > 0) CHECK(t.num(i, "var_x") > t.num(i - 1, "var_x"));
  }
  CHECK(t.str(0, "closed_form_quantile") == "NA");
  CHECK(t.num(4, "closed_form_quantile") == Approx(t.num(4, "var_quantile")).epsilon(0.05));
  CHECK(std::abs(t.num(4, "oracle_ratio") - 1.0) < 0.05);
}

TEST_CASE("coefficient dump") {
  StudyConfig c;
  c.n = 20;
  const std::string csv = run_coefficients(c);
  CHECK(csv.rfind("# provenance=ma_window:regvar", 0) == 0);
  const auto t = parse(csv);
  CHECK(t.header == std::vector<std::string>{"index", "weight"});
  CHECK(t.num(t.rows.size() - 1, "index") == 20.0);
  CHECK(t.num(t.rows.size() - 1, "weight") == 1.0);
}

TEST_CASE("functional demo table") {
  StudyConfig c;
  c.functional_samples = 20'000;
  const auto t = parse(run_functional(c));
  REQUIRE(t.rows.size() == 7);
  CHECK(t.header == std::vector<std::string>{"x", "p_hat", "stderr", "gaussian", "ratio"});
  CHECK(t.num(0, "x") == 0.0);
}

TEST_CASE("reruns are byte identical") {
  auto c = small_figure();
  c.x_points = 5;
  c.oracle = OracleChoice::Both;
  c.mc_samples = 20'000;
  CHECK(run_figure1(c) == run_figure1(c));
  StudyConfig r;
  CHECK(run_var_es(r) == run_var_es(r));
}

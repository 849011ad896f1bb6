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

// Gauss-Kronrod (7,15) panels with global adaptive refinement. Internal to
// the library; the refinement order is deterministic.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace lindev::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
  std::size_t evaluations = 0;
};

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

template <class F>
Panel gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

/// Integrates f over the union of the given breakpoints' intervals, refining
/// the worst panel until the summed error estimate is <= abs_tol or the panel
/// count reaches max_panels.
template <class F>
Result integrate(F&& f, std::span<const double> breaks, double abs_tol, std::size_t max_panels) {
  auto worse = [](const Panel& l, const Panel& r) {
    if (l.error != r.error) return l.error < r.error;
    return l.a > r.a;  // tie-break for determinism
  };
  std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> heap(worse);
  Result res;
  double total_err = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    Panel p = gk15(f, breaks[k], breaks[k + 1]);
    res.evaluations += 15;
    total_err += p.error;
    heap.push(p);
  }
  while (total_err > abs_tol && heap.size() < max_panels) {
    const Panel worst = heap.top();
    if (!(worst.error > 0.0)) break;
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;
    }
    const Panel left = gk15(f, worst.a, mid);
    const Panel right = gk15(f, mid, worst.b);
    res.evaluations += 30;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Sum in left-to-right order so the result does not depend on heap layout.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  double value = 0.0;
  double comp = 0.0;
  double err = 0.0;
  for (const Panel& p : panels) {
    const double y = p.value - comp;
    const double t = value + y;
    comp = (t - value) - y;
    value = t;
    err += p.error;
  }
  res.value = value;
  res.error = err;
  res.converged = err <= abs_tol;
  return res;
}

template <class F>
Result integrate(F&& f, double a, double b, double abs_tol, std::size_t max_panels = 2000) {
  const std::array<double, 2> br{a, b};
  return integrate(std::forward<F>(f), std::span<const double>(br), abs_tol, max_panels);
}

}  // namespace lindev::quad

// Copyright 2026 The requp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <deque>
#include <vector>

#include "optim_internal.hpp"

namespace requp::detail {

namespace {

struct CurvaturePair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;  // 1 / (s.y)
};

// Two-loop recursion; returns the search direction -H grad.
std::vector<double> search_direction(const std::deque<CurvaturePair>& pairs,
                                     const std::vector<double>& grad) {
  std::vector<double> q = grad;
  std::vector<double> a(pairs.size());
  for (std::size_t i = pairs.size(); i-- > 0;) {
    a[i] = pairs[i].rho * dot(pairs[i].s, q);
    for (std::size_t k = 0; k < q.size(); ++k) q[k] -= a[i] * pairs[i].y[k];
  }
  if (!pairs.empty()) {
    const CurvaturePair& last = pairs.back();
    const double scale = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& v : q) v *= scale;
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double b = pairs[i].rho * dot(pairs[i].y, q);
    for (std::size_t k = 0; k < q.size(); ++k) {
      q[k] += (a[i] - b) * pairs[i].s[k];
    }
  }
  for (double& v : q) v = -v;
  return q;
}

}  // namespace

OptimizerReport lbfgs_impl(const Objective& objective, const Gradient& gradient,
                           const std::vector<double>& x0,
                           const OptimizeOptions& opts) {
  return run_kernel(objective, x0, opts, [&](Evaluator& ev,
                                             OptimizerReport& report) {
    const std::size_t n = x0.size();
    GradientSource grad_at(gradient, ev, opts.fd_step);
    constexpr double kArmijoC1 = 1e-4;
    constexpr int kMaxBacktracks = 40;
    constexpr double kCurvatureFloor = 1e-10;

    std::vector<double> x = x0;
    double f = ev(x);
    std::vector<double> g = grad_at(x);
    std::deque<CurvaturePair> pairs;
    std::vector<double> x_new(n);
    bool retried_steepest = false;

    while (true) {
      ++report.n_iters;
      if (inf_norm(g) < opts.f_tol) return KernelOutcome{StopReason::FTol};

      std::vector<double> d = search_direction(pairs, g);
      double slope = dot(g, d);
      if (!(slope < 0.0)) {
        // Stale curvature produced a non-descent direction; fall back to
        // steepest descent.
        pairs.clear();
        d = g;
        for (double& v : d) v = -v;
        slope = dot(g, d);
        if (!(slope < 0.0)) return KernelOutcome{StopReason::FTol};
      }

      // With no curvature pairs the trial is clamped so one step moves no
      // coordinate by more than 1; a bare-gradient step can jump many
      // radians. With curvature on hand the unit trial stays, bounded so a
      // degenerate direction cannot move any coordinate past pi.
      const double d_norm = inf_norm(d);
      double step = pairs.empty()
                        ? std::min(1.0, 1.0 / d_norm)
                        : std::min(1.0, 3.14159265358979323846 / d_norm);
      double f_new = 0.0;
      bool accepted = false;
      for (int bt = 0; bt <= kMaxBacktracks; ++bt) {
        for (std::size_t k = 0; k < n; ++k) x_new[k] = x[k] + step * d[k];
        f_new = ev(x_new);
        if (f_new <= f + kArmijoC1 * step * slope) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        if (!pairs.empty() && !retried_steepest) {
          // One retry along -g with fresh memory before giving up.
          pairs.clear();
          retried_steepest = true;
          continue;
        }
        return KernelOutcome{StopReason::XTol};
      }
      retried_steepest = false;

      double step_norm = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        step_norm = std::max(step_norm, std::abs(step * d[k]));
      }
      if (step_norm < opts.x_tol) return KernelOutcome{StopReason::XTol};

      const std::vector<double> g_new = grad_at(x_new);
      CurvaturePair pair;
      pair.s.resize(n);
      pair.y.resize(n);
      for (std::size_t k = 0; k < n; ++k) {
        pair.s[k] = x_new[k] - x[k];
        pair.y[k] = g_new[k] - g[k];
      }
      const double sy = dot(pair.s, pair.y);
      if (sy > kCurvatureFloor) {
        pair.rho = 1.0 / sy;
        pairs.push_back(std::move(pair));
        if (pairs.size() > static_cast<std::size_t>(opts.lbfgs_memory)) {
          pairs.pop_front();
        }
      }
      x = x_new;
      f = f_new;
      g = g_new;
    }
  });
}

}  // namespace requp::detail

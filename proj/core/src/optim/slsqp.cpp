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

#include <algorithm>
#include <cmath>
#include <vector>

#include "optim_internal.hpp"

namespace requp::detail {

namespace {

// B d = -g through Cholesky; escalating Tikhonov shifts keep the solve SPD
// even when accumulated updates have gone numerically sour.
std::vector<double> quadratic_step(const std::vector<double>& hessian,
                                   const std::vector<double>& grad, int n) {
  const std::size_t un = static_cast<std::size_t>(n);
  double trace = 0.0;
  for (std::size_t i = 0; i < un; ++i) trace += hessian[i * un + i];
  double shift = 0.0;
  for (int attempt = 0; attempt < 24; ++attempt) {
    std::vector<double> factor = hessian;
    if (shift > 0.0) {
      for (std::size_t i = 0; i < un; ++i) factor[i * un + i] += shift;
    }
    if (cholesky(factor, n)) {
      std::vector<double> d(un);
      for (std::size_t i = 0; i < un; ++i) d[i] = -grad[i];
      cholesky_solve(factor, d, n);
      return d;
    }
    shift = shift == 0.0 ? 1e-10 * std::max(trace, 1.0) : shift * 10.0;
  }
  // Fully degenerate model; steepest descent.
  std::vector<double> d(un);
  for (std::size_t i = 0; i < un; ++i) d[i] = -grad[i];
  return d;
}

}  // namespace

OptimizerReport slsqp_impl(const Objective& objective, const Gradient& gradient,
                           const std::vector<double>& x0,
                           const OptimizeOptions& opts) {
  return run_kernel(objective, x0, opts, [&](Evaluator& ev,
                                             OptimizerReport& report) {
    const int n = static_cast<int>(x0.size());
    const std::size_t un = x0.size();
    GradientSource grad_at(gradient, ev, opts.fd_step);
    constexpr double kArmijoC1 = 1e-4;
    constexpr int kMaxBacktracks = 40;
    constexpr double kDampingTheta = 0.2;

    std::vector<double> x = x0;
    double f = ev(x);
    std::vector<double> g = grad_at(x);

    // Damped BFGS model of the Hessian, started at the identity.
    std::vector<double> hess(un * un, 0.0);
    for (std::size_t i = 0; i < un; ++i) hess[i * un + i] = 1.0;

    std::vector<double> x_new(un), bs(un), ybar(un);
    bool reset_once = false;
    bool fresh_model = true;

    while (true) {
      ++report.n_iters;
      if (inf_norm(g) < opts.f_tol) return KernelOutcome{StopReason::FTol};

      std::vector<double> d = quadratic_step(hess, g, n);
      double slope = dot(g, d);
      if (!(slope < 0.0)) {
        for (std::size_t i = 0; i < un * un; ++i) hess[i] = 0.0;
        for (std::size_t i = 0; i < un; ++i) hess[i * un + i] = 1.0;
        fresh_model = true;
        d = g;
        for (double& v : d) v = -v;
        slope = dot(g, d);
        if (!(slope < 0.0)) return KernelOutcome{StopReason::FTol};
      }

      // Armijo with quadratic-interpolation backtracking. While the
      // Hessian model is fresh the trial is clamped so no coordinate moves
      // by more than 1: an uncapped step along a bare gradient can jump
      // many radians and strand the iterate in a high-frequency region.
      // Once curvature is learned the unit trial keeps superlinear steps,
      // still bounded to pi per coordinate against near-singular models.
      const double d_norm = inf_norm(d);
      double step = fresh_model ? std::min(1.0, 1.0 / d_norm)
                                : std::min(1.0, 3.14159265358979323846 / d_norm);
      double f_new = 0.0;
      bool accepted = false;
      for (int bt = 0; bt <= kMaxBacktracks; ++bt) {
        for (std::size_t k = 0; k < un; ++k) x_new[k] = x[k] + step * d[k];
        f_new = ev(x_new);
        if (f_new <= f + kArmijoC1 * step * slope) {
          accepted = true;
          break;
        }
        double trial = step;
        if (std::isfinite(f_new)) {
          const double denom = 2.0 * (f_new - f - slope * step);
          if (denom > 0.0) trial = -slope * step * step / denom;
        }
        step = std::clamp(trial, 0.1 * step, 0.5 * step);
      }
      if (accepted && report.n_iters == 1 && step <= 0.5) {
        // One bounded expansion toward the interpolated line minimum, so a
        // hard-clamped opening step still recovers the exact line search on
        // quadratics. The probe never moves beyond 2x the accepted trial.
        const double denom = 2.0 * (f_new - f - slope * step);
        if (denom > 0.0) {
          const double line_min = -slope * step * step / denom;
          if (line_min > 1.01 * step) {
            const double probe = std::min(line_min, 2.0 * step);
            std::vector<double> x_probe(un);
            for (std::size_t k = 0; k < un; ++k) {
              x_probe[k] = x[k] + probe * d[k];
            }
            const double f_probe = ev(x_probe);
            if (f_probe < f_new &&
                f_probe <= f + kArmijoC1 * probe * slope) {
              x_new = x_probe;
              f_new = f_probe;
              step = probe;
            }
          }
        }
      }
      if (!accepted) {
        if (!reset_once) {
          for (std::size_t i = 0; i < un * un; ++i) hess[i] = 0.0;
          for (std::size_t i = 0; i < un; ++i) hess[i * un + i] = 1.0;
          fresh_model = true;
          reset_once = true;
          continue;
        }
        return KernelOutcome{StopReason::XTol};
      }
      reset_once = false;

      double step_norm = 0.0;
      for (std::size_t k = 0; k < un; ++k) {
        step_norm = std::max(step_norm, std::abs(step * d[k]));
      }
      if (step_norm < opts.x_tol) return KernelOutcome{StopReason::XTol};

      const std::vector<double> g_new = grad_at(x_new);
      std::vector<double> s(un), y(un);
      for (std::size_t k = 0; k < un; ++k) {
        s[k] = x_new[k] - x[k];
        y[k] = g_new[k] - g[k];
      }
      for (std::size_t i = 0; i < un; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < un; ++k) acc += hess[i * un + k] * s[k];
        bs[i] = acc;
      }
      const double sbs = dot(s, bs);
      const double sy = dot(s, y);
      if (sbs > 0.0) {
        // Powell damping keeps the update positive definite.
        double theta = 1.0;
        if (sy < kDampingTheta * sbs) {
          theta = (1.0 - kDampingTheta) * sbs / (sbs - sy);
        }
        for (std::size_t k = 0; k < un; ++k) {
          ybar[k] = theta * y[k] + (1.0 - theta) * bs[k];
        }
        const double sybar = dot(s, ybar);
        if (sybar > 1e-12 * sbs) {
          for (std::size_t i = 0; i < un; ++i) {
            for (std::size_t k = 0; k < un; ++k) {
              hess[i * un + k] +=
                  ybar[i] * ybar[k] / sybar - bs[i] * bs[k] / sbs;
            }
          }
          fresh_model = false;
        }
      }
      x = x_new;
      f = f_new;
      g = g_new;
    }
  });
}

}  // namespace requp::detail

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

#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "requp/optim.hpp"

namespace requp::detail {

/// Thrown by Evaluator when the evaluation budget is spent; kernels unwind
/// to the driver, which reports the incumbent with reason MaxEvals.
struct BudgetExhausted {};

/// Counts evaluations, enforces the budget, tracks the incumbent, and maps
/// non-finite objective values to +inf (except at the starting point, where
/// a non-finite value is a caller error).
class Evaluator {
 public:
  Evaluator(const Objective& objective, int max_evals)
      : objective_(objective), max_evals_(max_evals) {}

  double operator()(const std::vector<double>& x) {
    if (n_evals_ >= max_evals_) throw BudgetExhausted{};
    ++n_evals_;
    double f = objective_(x);
    if (!std::isfinite(f)) {
      if (first_call_) {
        throw std::invalid_argument(
            "minimize: objective is not finite at the starting point");
      }
      ++nan_rejections_;
      f = std::numeric_limits<double>::infinity();
    }
    first_call_ = false;
    if (!has_best_ || f < f_best_) {
      has_best_ = true;
      f_best_ = f;
      x_best_ = x;
    }
    return f;
  }

  int n_evals() const { return n_evals_; }
  int nan_rejections() const { return nan_rejections_; }
  double f_best() const { return f_best_; }
  const std::vector<double>& x_best() const { return x_best_; }
  bool exhausted() const { return n_evals_ >= max_evals_; }

 private:
  const Objective& objective_;
  int max_evals_;
  int n_evals_ = 0;
  int nan_rejections_ = 0;
  bool first_call_ = true;
  bool has_best_ = false;
  double f_best_ = std::numeric_limits<double>::infinity();
  std::vector<double> x_best_;
};

struct KernelOutcome {
  StopReason reason = StopReason::MaxEvals;
};

void validate_start(const std::vector<double>& x0,
                    const OptimizeOptions& opts);

/// Wraps an analytic gradient, or synthesizes central differences through
/// the evaluator so probe evaluations are budgeted. Never called at points
/// where the objective was non-finite.
class GradientSource {
 public:
  GradientSource(const Gradient& analytic, Evaluator& ev, double fd_step)
      : analytic_(analytic), ev_(ev), h_(fd_step) {}

  std::vector<double> operator()(const std::vector<double>& x) {
    if (analytic_) return analytic_(x);
    std::vector<double> work = x;
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double saved = work[i];
      work[i] = saved + h_;
      const double plus = ev_(work);
      work[i] = saved - h_;
      const double minus = ev_(work);
      work[i] = saved;
      grad[i] = (plus - minus) / (2.0 * h_);
    }
    return grad;
  }

 private:
  const Gradient& analytic_;
  Evaluator& ev_;
  double h_;
};

inline double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Solves A x = b by Gaussian elimination with partial pivoting; A is n x n
/// row-major and clobbered. Returns false if a pivot falls below tol.
bool solve_linear(std::vector<double>& a, std::vector<double>& b, int n,
                  double pivot_tol);

/// In-place Cholesky of a row-major SPD matrix (lower factor). Returns
/// false if a diagonal pivot is not strictly positive.
bool cholesky(std::vector<double>& a, int n);

/// Solves L L^T x = b given the factor from cholesky().
void cholesky_solve(const std::vector<double>& l, std::vector<double>& b,
                    int n);

template <typename Body>
OptimizerReport run_kernel(const Objective& objective,
                           const std::vector<double>& x0,
                           const OptimizeOptions& opts, Body&& body) {
  validate_start(x0, opts);
  const auto start = std::chrono::steady_clock::now();
  Evaluator ev(objective, opts.max_evals);
  OptimizerReport report;
  try {
    const KernelOutcome outcome = body(ev, report);
    report.reason = outcome.reason;
    report.converged = outcome.reason != StopReason::MaxEvals;
  } catch (const BudgetExhausted&) {
    report.reason = StopReason::MaxEvals;
    report.converged = false;
  }
  report.x_best = ev.x_best();
  report.f_best = ev.f_best();
  report.n_evals = ev.n_evals();
  report.nan_rejections = ev.nan_rejections();
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

OptimizerReport nelder_mead_impl(const Objective& objective,
                                 const std::vector<double>& x0,
                                 const OptimizeOptions& opts);
OptimizerReport lbfgs_impl(const Objective& objective, const Gradient& gradient,
                           const std::vector<double>& x0,
                           const OptimizeOptions& opts);
OptimizerReport cobyla_impl(const Objective& objective,
                            const std::vector<double>& x0,
                            const OptimizeOptions& opts);
OptimizerReport slsqp_impl(const Objective& objective, const Gradient& gradient,
                           const std::vector<double>& x0,
                           const OptimizeOptions& opts);

}  // namespace requp::detail

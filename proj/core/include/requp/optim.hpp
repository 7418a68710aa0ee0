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

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace requp {

using Objective = std::function<double(const std::vector<double>&)>;
using Gradient = std::function<std::vector<double>(const std::vector<double>&)>;

enum class Method { LBFGS, COBYLA, NelderMead, SLSQP };

enum class StopReason { FTol, XTol, MaxEvals };

struct OptimizeOptions {
  int max_evals = 10000;
  double f_tol = 1e-6;
  double x_tol = 1e-6;
  /// L-BFGS curvature-pair memory.
  int lbfgs_memory = 10;
  /// COBYLA trust radius, shrunk monotonically from begin to end.
  double rho_begin = 0.5;
  double rho_end = 1e-6;
  /// Central-difference step used when no analytic gradient is supplied.
  double fd_step = 1e-6;
};

/// What a minimization run produced. Every field except wall_time_s is a
/// deterministic function of (objective, x0, opts).
struct OptimizerReport {
  std::vector<double> x_best;
  double f_best = 0.0;
  int n_evals = 0;
  int n_iters = 0;
  bool converged = false;
  StopReason reason = StopReason::MaxEvals;
  /// Steps rejected because the objective came back non-finite.
  int nan_rejections = 0;
  double wall_time_s = 0.0;
};

/// Dispatch to the selected kernel. Gradient-based methods (LBFGS, SLSQP)
/// fall back to a central-difference gradient built from the objective;
/// those probe evaluations count against max_evals.
OptimizerReport minimize(const Objective& objective,
                         const std::vector<double>& x0, Method method,
                         const OptimizeOptions& opts = {});

/// Same, with an analytic gradient for LBFGS / SLSQP (ignored by the
/// derivative-free kernels). Gradient calls do not count as evaluations.
OptimizerReport minimize(const Objective& objective, const Gradient& gradient,
                         const std::vector<double>& x0, Method method,
                         const OptimizeOptions& opts = {});

/// Nelder-Mead with the Gao-Han adaptive coefficients
///   alpha = 1, beta = 1 + 2/n, gamma = 0.75 - 1/(2n), delta = 1 - 1/n.
/// Initial simplex: x0 plus one vertex per axis offset by
/// 0.05 * max(|x0_i|, 1). Stops when the simplex f-spread < f_tol and its
/// diameter < x_tol, or on max_evals.
OptimizerReport nelder_mead(const Objective& objective,
                            const std::vector<double>& x0,
                            const OptimizeOptions& opts = {});

/// The (reflection, expansion, contraction, shrink) coefficients
/// nelder_mead uses at dimension n.
std::array<double, 4> nelder_mead_coefficients(int n);

/// Limited-memory BFGS: two-loop recursion over the last `lbfgs_memory`
/// curvature pairs, Armijo backtracking line search (c1 = 1e-4, halving,
/// at most 40 backtracks), pairs with s.y <= 1e-10 skipped. Stops on
/// ||grad||_inf < f_tol, step < x_tol, or max_evals. Unbounded.
OptimizerReport lbfgs(const Objective& objective, const Gradient& gradient,
                      const std::vector<double>& x0,
                      const OptimizeOptions& opts = {});

/// Derivative-free trust-region scheme after Powell, unconstrained
/// specialization: an n+1-point simplex interpolates a linear model of the
/// objective, the step descends the model within radius rho, vertex
/// replacement keeps the simplex well conditioned, and rho shrinks from
/// rho_begin to rho_end.
OptimizerReport cobyla(const Objective& objective,
                       const std::vector<double>& x0,
                       const OptimizeOptions& opts = {});

/// Sequential quadratic programming, unconstrained specialization: damped
/// BFGS Hessian model (Powell damping, theta-rule at 0.2), each step solves
/// the quadratic subproblem by Cholesky on the damped Hessian, then an
/// Armijo line search with quadratic-interpolation backtracking.
OptimizerReport slsqp(const Objective& objective, const Gradient& gradient,
                      const std::vector<double>& x0,
                      const OptimizeOptions& opts = {});

const char* to_string(Method method);
const char* to_string(StopReason reason);
Method method_from_string(const std::string& name);

/// Standard test functions for the validation battery.
namespace testfn {
double sphere(const std::vector<double>& x);
double rosenbrock2(const std::vector<double>& x);
double beale(const std::vector<double>& x);
}  // namespace testfn

struct BatteryCase {
  std::string function_name;
  Method method;
  double f_best;
  double f_target;       // known optimum value
  double tolerance;      // pass iff f_best - f_target <= tolerance
  int n_evals;
  bool deterministic;    // report identical on a repeat run
  bool passed;
};

/// Runs sphere (n = 2, 5, 10), Rosenbrock (n = 2), and Beale through all
/// four methods twice, checking optimum proximity (<= 1e-4 within 2e4
/// evaluations) and run-to-run determinism.
std::vector<BatteryCase> run_validation_battery();

}  // namespace requp

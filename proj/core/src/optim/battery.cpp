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

#include <array>
#include <cmath>

#include "requp/optim.hpp"

namespace requp {

namespace testfn {

double sphere(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double rosenbrock2(const std::vector<double>& x) {
  const double a = x[1] - x[0] * x[0];
  const double b = 1.0 - x[0];
  return 100.0 * a * a + b * b;
}

double beale(const std::vector<double>& x) {
  const double t1 = 1.5 - x[0] + x[0] * x[1];
  const double t2 = 2.25 - x[0] + x[0] * x[1] * x[1];
  const double t3 = 2.625 - x[0] + x[0] * x[1] * x[1] * x[1];
  return t1 * t1 + t2 * t2 + t3 * t3;
}

}  // namespace testfn

namespace {

struct BatteryProblem {
  std::string name;
  Objective objective;
  std::vector<double> x0;
  double f_target;
};

std::vector<BatteryProblem> battery_problems() {
  std::vector<BatteryProblem> problems;
  for (int n : {2, 5, 10}) {
    problems.push_back({"sphere" + std::to_string(n), testfn::sphere,
                        std::vector<double>(static_cast<std::size_t>(n), 1.0),
                        0.0});
  }
  problems.push_back({"rosenbrock2", testfn::rosenbrock2, {-1.2, 1.0}, 0.0});
  problems.push_back({"beale", testfn::beale, {1.0, 1.0}, 0.0});
  return problems;
}

bool reports_match(const OptimizerReport& a, const OptimizerReport& b) {
  // wall_time_s is the one legitimately nondeterministic field.
  return a.x_best == b.x_best && a.f_best == b.f_best &&
         a.n_evals == b.n_evals && a.n_iters == b.n_iters &&
         a.converged == b.converged && a.reason == b.reason &&
         a.nan_rejections == b.nan_rejections;
}

}  // namespace

std::vector<BatteryCase> run_validation_battery() {
  constexpr double kTolerance = 1e-4;
  OptimizeOptions opts;
  opts.max_evals = 20000;

  std::vector<BatteryCase> results;
  for (const BatteryProblem& problem : battery_problems()) {
    for (Method method : {Method::LBFGS, Method::COBYLA, Method::NelderMead,
                          Method::SLSQP}) {
      const OptimizerReport first =
          minimize(problem.objective, problem.x0, method, opts);
      const OptimizerReport second =
          minimize(problem.objective, problem.x0, method, opts);
      BatteryCase result;
      result.function_name = problem.name;
      result.method = method;
      result.f_best = first.f_best;
      result.f_target = problem.f_target;
      result.tolerance = kTolerance;
      result.n_evals = first.n_evals;
      result.deterministic = reports_match(first, second);
      result.passed = result.deterministic &&
                      first.f_best - problem.f_target <= kTolerance;
      results.push_back(result);
    }
  }
  return results;
}

}  // namespace requp

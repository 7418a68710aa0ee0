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
#include <stdexcept>

#include "optim_internal.hpp"
#include "requp/optim.hpp"

namespace requp {

namespace detail {

void validate_start(const std::vector<double>& x0,
                    const OptimizeOptions& opts) {
  if (x0.empty()) {
    throw std::invalid_argument("minimize: empty starting point");
  }
  for (double v : x0) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("minimize: starting point must be finite");
    }
  }
  if (opts.max_evals < 1) {
    throw std::invalid_argument("minimize: max_evals must be >= 1");
  }
  if (!(opts.f_tol > 0.0) || !(opts.x_tol > 0.0) || !(opts.fd_step > 0.0)) {
    throw std::invalid_argument("minimize: tolerances must be positive");
  }
  if (opts.lbfgs_memory < 1) {
    throw std::invalid_argument("minimize: lbfgs_memory must be >= 1");
  }
  if (!(opts.rho_begin > opts.rho_end) || !(opts.rho_end > 0.0)) {
    throw std::invalid_argument("minimize: need rho_begin > rho_end > 0");
  }
}

bool solve_linear(std::vector<double>& a, std::vector<double>& b, int n,
                  double pivot_tol) {
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double pivot_abs = std::abs(a[static_cast<std::size_t>(col) * n + col]);
    for (int row = col + 1; row < n; ++row) {
      const double v = std::abs(a[static_cast<std::size_t>(row) * n + col]);
      if (v > pivot_abs) {
        pivot_abs = v;
        pivot = row;
      }
    }
    if (pivot_abs < pivot_tol) return false;
    if (pivot != col) {
      for (int k = col; k < n; ++k) {
        std::swap(a[static_cast<std::size_t>(col) * n + k],
                  a[static_cast<std::size_t>(pivot) * n + k]);
      }
      std::swap(b[static_cast<std::size_t>(col)],
                b[static_cast<std::size_t>(pivot)]);
    }
    const double inv = 1.0 / a[static_cast<std::size_t>(col) * n + col];
    for (int row = col + 1; row < n; ++row) {
      const double factor = a[static_cast<std::size_t>(row) * n + col] * inv;
      if (factor == 0.0) continue;
      for (int k = col; k < n; ++k) {
        a[static_cast<std::size_t>(row) * n + k] -=
            factor * a[static_cast<std::size_t>(col) * n + k];
      }
      b[static_cast<std::size_t>(row)] -= factor * b[static_cast<std::size_t>(col)];
    }
  }
  for (int row = n - 1; row >= 0; --row) {
    double s = b[static_cast<std::size_t>(row)];
    for (int k = row + 1; k < n; ++k) {
      s -= a[static_cast<std::size_t>(row) * n + k] * b[static_cast<std::size_t>(k)];
    }
    b[static_cast<std::size_t>(row)] = s / a[static_cast<std::size_t>(row) * n + row];
  }
  return true;
}

bool cholesky(std::vector<double>& a, int n) {
  for (int j = 0; j < n; ++j) {
    double d = a[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) {
      const double l = a[static_cast<std::size_t>(j) * n + k];
      d -= l * l;
    }
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    a[static_cast<std::size_t>(j) * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k) {
        s -= a[static_cast<std::size_t>(i) * n + k] *
             a[static_cast<std::size_t>(j) * n + k];
      }
      a[static_cast<std::size_t>(i) * n + j] = s / ljj;
    }
  }
  return true;
}

void cholesky_solve(const std::vector<double>& l, std::vector<double>& b,
                    int n) {
  for (int i = 0; i < n; ++i) {
    double s = b[static_cast<std::size_t>(i)];
    for (int k = 0; k < i; ++k) {
      s -= l[static_cast<std::size_t>(i) * n + k] * b[static_cast<std::size_t>(k)];
    }
    b[static_cast<std::size_t>(i)] = s / l[static_cast<std::size_t>(i) * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < n; ++k) {
      s -= l[static_cast<std::size_t>(k) * n + i] * b[static_cast<std::size_t>(k)];
    }
    b[static_cast<std::size_t>(i)] = s / l[static_cast<std::size_t>(i) * n + i];
  }
}

}  // namespace detail

OptimizerReport minimize(const Objective& objective,
                         const std::vector<double>& x0, Method method,
                         const OptimizeOptions& opts) {
  return minimize(objective, Gradient{}, x0, method, opts);
}

OptimizerReport minimize(const Objective& objective, const Gradient& gradient,
                         const std::vector<double>& x0, Method method,
                         const OptimizeOptions& opts) {
  switch (method) {
    case Method::LBFGS:
      return detail::lbfgs_impl(objective, gradient, x0, opts);
    case Method::COBYLA:
      return detail::cobyla_impl(objective, x0, opts);
    case Method::NelderMead:
      return detail::nelder_mead_impl(objective, x0, opts);
    case Method::SLSQP:
      return detail::slsqp_impl(objective, gradient, x0, opts);
  }
  throw std::invalid_argument("minimize: unknown method");
}

OptimizerReport nelder_mead(const Objective& objective,
                            const std::vector<double>& x0,
                            const OptimizeOptions& opts) {
  return detail::nelder_mead_impl(objective, x0, opts);
}

OptimizerReport lbfgs(const Objective& objective, const Gradient& gradient,
                      const std::vector<double>& x0,
                      const OptimizeOptions& opts) {
  return detail::lbfgs_impl(objective, gradient, x0, opts);
}

OptimizerReport cobyla(const Objective& objective,
                       const std::vector<double>& x0,
                       const OptimizeOptions& opts) {
  return detail::cobyla_impl(objective, x0, opts);
}

OptimizerReport slsqp(const Objective& objective, const Gradient& gradient,
                      const std::vector<double>& x0,
                      const OptimizeOptions& opts) {
  return detail::slsqp_impl(objective, gradient, x0, opts);
}

const char* to_string(Method method) {
  switch (method) {
    case Method::LBFGS:
      return "lbfgs";
    case Method::COBYLA:
      return "cobyla";
    case Method::NelderMead:
      return "neldermead";
    case Method::SLSQP:
      return "slsqp";
  }
  return "?";
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::FTol:
      return "ftol";
    case StopReason::XTol:
      return "xtol";
    case StopReason::MaxEvals:
      return "max_evals";
  }
  return "?";
}

Method method_from_string(const std::string& name) {
  if (name == "lbfgs") return Method::LBFGS;
  if (name == "cobyla") return Method::COBYLA;
  if (name == "neldermead") return Method::NelderMead;
  if (name == "slsqp") return Method::SLSQP;
  throw std::invalid_argument("unknown method: " + name);
}

}  // namespace requp

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

// Gauss-Jordan inverse with partial pivoting; a is n x n row-major and
// clobbered, inv receives the result. False on a vanishing pivot.
bool invert_matrix(std::vector<double>& a, std::vector<double>& inv, int n,
                   double pivot_tol) {
  const std::size_t un = static_cast<std::size_t>(n);
  inv.assign(un * un, 0.0);
  for (std::size_t i = 0; i < un; ++i) inv[i * un + i] = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double pivot_abs = std::abs(a[static_cast<std::size_t>(col) * un + col]);
    for (int row = col + 1; row < n; ++row) {
      const double v = std::abs(a[static_cast<std::size_t>(row) * un + col]);
      if (v > pivot_abs) {
        pivot_abs = v;
        pivot = row;
      }
    }
    if (pivot_abs < pivot_tol) return false;
    if (pivot != col) {
      for (std::size_t k = 0; k < un; ++k) {
        std::swap(a[static_cast<std::size_t>(col) * un + k],
                  a[static_cast<std::size_t>(pivot) * un + k]);
        std::swap(inv[static_cast<std::size_t>(col) * un + k],
                  inv[static_cast<std::size_t>(pivot) * un + k]);
      }
    }
    const double inv_pivot = 1.0 / a[static_cast<std::size_t>(col) * un + col];
    for (std::size_t k = 0; k < un; ++k) {
      a[static_cast<std::size_t>(col) * un + k] *= inv_pivot;
      inv[static_cast<std::size_t>(col) * un + k] *= inv_pivot;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const double factor = a[static_cast<std::size_t>(row) * un + col];
      if (factor == 0.0) continue;
      for (std::size_t k = 0; k < un; ++k) {
        a[static_cast<std::size_t>(row) * un + k] -=
            factor * a[static_cast<std::size_t>(col) * un + k];
        inv[static_cast<std::size_t>(row) * un + k] -=
            factor * inv[static_cast<std::size_t>(col) * un + k];
      }
    }
  }
  return true;
}

}  // namespace

// Linear-approximation trust region after Powell's COBYLA, specialized to
// the unconstrained case. An n+1-point simplex interpolates a linear model;
// each step walks distance rho down the model gradient. The reciprocal
// basis of the edge matrix supplies both the model and the simplex
// conditioning measures: sigma_j (distance of vertex j from the affine hull
// of the others) is 1 / ||row_j of the inverse||, and that row is also the
// direction in which a dropped vertex is rebuilt. The trust radius rho only
// ever shrinks, and only when a step fails with acceptable geometry, so a
// failure always means the current resolution is exhausted rather than that
// the simplex went stale.
OptimizerReport cobyla_impl(const Objective& objective,
                            const std::vector<double>& x0,
                            const OptimizeOptions& opts) {
  return run_kernel(objective, x0, opts, [&](Evaluator& ev,
                                             OptimizerReport& report) {
    const int n = static_cast<int>(x0.size());
    const std::size_t un = x0.size();
    double rho = opts.rho_begin;
    // Powell's acceptability constants.
    constexpr double kEdgeBound = 2.1;
    constexpr double kSigmaBound = 0.25;
    constexpr double kGeometryStep = 0.5;

    std::vector<std::vector<double>> verts(un + 1, x0);
    std::vector<double> fvals(un + 1);
    fvals[0] = ev(verts[0]);
    for (std::size_t i = 0; i < un; ++i) {
      verts[i + 1][i] += rho;
      fvals[i + 1] = ev(verts[i + 1]);
    }

    std::vector<double> edges(un * un), inverse, grad(un), x_new(un);

    const auto rebuild_simplex = [&]() {
      for (std::size_t i = 0; i < un; ++i) {
        verts[i + 1] = verts[0];
        verts[i + 1][i] += rho;
        fvals[i + 1] = ev(verts[i + 1]);
      }
    };

    while (true) {
      ++report.n_iters;

      std::size_t best = 0;
      for (std::size_t i = 1; i <= un; ++i) {
        if (fvals[i] < fvals[best]) best = i;
      }
      if (best != 0) {
        std::swap(verts[0], verts[best]);
        std::swap(fvals[0], fvals[best]);
      }

      // Edge matrix rows are d_i = v_i - v_0.
      for (std::size_t i = 0; i < un; ++i) {
        for (std::size_t k = 0; k < un; ++k) {
          edges[i * un + k] = verts[i + 1][k] - verts[0][k];
        }
      }
      std::vector<double> lu = edges;
      if (!invert_matrix(lu, inverse, n, 1e-300)) {
        rebuild_simplex();
        continue;
      }

      // Model gradient g = sum_i (f_i - f_0) r_i with r_i the reciprocal
      // vectors (columns of the inverse, since edges are stored as rows).
      for (std::size_t k = 0; k < un; ++k) grad[k] = 0.0;
      for (std::size_t i = 0; i < un; ++i) {
        const double df = fvals[i + 1] - fvals[0];
        for (std::size_t k = 0; k < un; ++k) {
          grad[k] += df * inverse[k * un + i];
        }
      }
      double gnorm = 0.0;
      for (double v : grad) gnorm += v * v;
      gnorm = std::sqrt(gnorm);
      if (!std::isfinite(gnorm)) {
        rebuild_simplex();
        continue;
      }

      // Geometry: edge lengths and sigma_j = 1 / ||r_j||.
      std::size_t repair = un + 1;
      double worst_edge = 0.0;
      for (std::size_t i = 0; i < un; ++i) {
        double len = 0.0;
        for (std::size_t k = 0; k < un; ++k) {
          len += edges[i * un + k] * edges[i * un + k];
        }
        len = std::sqrt(len);
        if (len > kEdgeBound * rho && len > worst_edge) {
          worst_edge = len;
          repair = i;
        }
      }
      if (repair == un + 1) {
        double worst_sigma = kSigmaBound * rho;
        for (std::size_t i = 0; i < un; ++i) {
          double rnorm = 0.0;
          for (std::size_t k = 0; k < un; ++k) {
            rnorm += inverse[k * un + i] * inverse[k * un + i];
          }
          const double sigma = 1.0 / std::sqrt(rnorm);
          if (sigma < worst_sigma) {
            worst_sigma = sigma;
            repair = i;
          }
        }
      }
      if (repair != un + 1) {
        // Rebuild the offending vertex along its reciprocal direction,
        // signed to descend the model.
        double rnorm = 0.0;
        for (std::size_t k = 0; k < un; ++k) {
          rnorm += inverse[k * un + repair] * inverse[k * un + repair];
        }
        rnorm = std::sqrt(rnorm);
        double direction = 0.0;
        for (std::size_t k = 0; k < un; ++k) {
          direction += inverse[k * un + repair] * grad[k];
        }
        const double sign = direction > 0.0 ? -1.0 : 1.0;
        for (std::size_t k = 0; k < un; ++k) {
          verts[repair + 1][k] =
              verts[0][k] +
              sign * kGeometryStep * rho * inverse[k * un + repair] / rnorm;
        }
        fvals[repair + 1] = ev(verts[repair + 1]);
        continue;
      }

      if (!(gnorm > 0.0)) {
        if (rho <= opts.rho_end) return KernelOutcome{StopReason::XTol};
        rho = std::max(0.5 * rho, opts.rho_end);
        continue;
      }

      for (std::size_t k = 0; k < un; ++k) {
        x_new[k] = verts[0][k] - (rho / gnorm) * grad[k];
      }
      const double f_new = ev(x_new);

      if (f_new < fvals[0] - 0.1 * rho * gnorm) {
        // Success: drop the vertex most collinear with the step so the
        // simplex keeps spanning all directions.
        std::size_t drop = 1;
        double best_cos = -1.0;
        for (std::size_t i = 0; i < un; ++i) {
          double along = 0.0, len = 0.0;
          for (std::size_t k = 0; k < un; ++k) {
            along += edges[i * un + k] * grad[k];
            len += edges[i * un + k] * edges[i * un + k];
          }
          const double cosine =
              len > 0.0 ? std::abs(along) / (std::sqrt(len) * gnorm) : 1.0;
          if (cosine > best_cos) {
            best_cos = cosine;
            drop = i + 1;
          }
        }
        verts[drop] = x_new;
        fvals[drop] = f_new;
        continue;
      }

      // Failure with trustworthy geometry: keep the sample if it helps,
      // then descend the resolution ladder.
      std::size_t worst = 1;
      for (std::size_t i = 2; i <= un; ++i) {
        if (fvals[i] > fvals[worst]) worst = i;
      }
      if (f_new < fvals[worst]) {
        verts[worst] = x_new;
        fvals[worst] = f_new;
      }
      if (rho <= opts.rho_end) return KernelOutcome{StopReason::XTol};
      rho = std::max(0.5 * rho, opts.rho_end);
    }
  });
}

}  // namespace requp::detail

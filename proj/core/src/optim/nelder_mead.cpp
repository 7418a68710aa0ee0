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
#include <numeric>
#include <vector>

#include "optim_internal.hpp"

namespace requp::detail {

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& verts,
                        std::size_t best) {
  double diam = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (i == best) continue;
    double dist = 0.0;
    for (std::size_t k = 0; k < verts[i].size(); ++k) {
      dist = std::max(dist, std::abs(verts[i][k] - verts[best][k]));
    }
    diam = std::max(diam, dist);
  }
  return diam;
}

}  // namespace

}  // namespace requp::detail

namespace requp {

std::array<double, 4> nelder_mead_coefficients(int n) {
  const double nd = static_cast<double>(n);
  return {1.0, 1.0 + 2.0 / nd, 0.75 - 1.0 / (2.0 * nd), 1.0 - 1.0 / nd};
}

}  // namespace requp

namespace requp::detail {

OptimizerReport nelder_mead_impl(const Objective& objective,
                                 const std::vector<double>& x0,
                                 const OptimizeOptions& opts) {
  return run_kernel(objective, x0, opts, [&](Evaluator& ev,
                                             OptimizerReport& report) {
    const std::size_t n = x0.size();
    const double nd = static_cast<double>(n);
    const auto [alpha, beta, gamma, delta] =
        nelder_mead_coefficients(static_cast<int>(n));

    std::vector<std::vector<double>> verts(n + 1, x0);
    std::vector<double> fvals(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      verts[i + 1][i] += 0.05 * std::max(std::abs(x0[i]), 1.0);
    }
    for (std::size_t i = 0; i <= n; ++i) fvals[i] = ev(verts[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xt(n);

    while (true) {
      ++report.n_iters;
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                       std::size_t b) {
        return fvals[a] < fvals[b];
      });
      const std::size_t best = order[0];
      const std::size_t second_worst = order[n > 0 ? n - 1 : 0];
      const std::size_t worst = order[n];

      const double spread = fvals[worst] - fvals[best];
      if (spread < opts.f_tol && simplex_diameter(verts, best) < opts.x_tol) {
        return KernelOutcome{StopReason::FTol};
      }

      for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
          if (i != worst) s += verts[i][k];
        }
        centroid[k] = s / nd;
      }

      for (std::size_t k = 0; k < n; ++k) {
        xr[k] = centroid[k] + alpha * (centroid[k] - verts[worst][k]);
      }
      const double fr = ev(xr);

      if (fr < fvals[best]) {
        for (std::size_t k = 0; k < n; ++k) {
          xt[k] = centroid[k] + beta * (xr[k] - centroid[k]);
        }
        const double fe = ev(xt);
        if (fe < fr) {
          verts[worst] = xt;
          fvals[worst] = fe;
        } else {
          verts[worst] = xr;
          fvals[worst] = fr;
        }
        continue;
      }
      if (fr < fvals[second_worst]) {
        verts[worst] = xr;
        fvals[worst] = fr;
        continue;
      }

      bool shrink = false;
      if (fr < fvals[worst]) {
        // Outside contraction.
        for (std::size_t k = 0; k < n; ++k) {
          xt[k] = centroid[k] + gamma * (xr[k] - centroid[k]);
        }
        const double fc = ev(xt);
        if (fc <= fr) {
          verts[worst] = xt;
          fvals[worst] = fc;
        } else {
          shrink = true;
        }
      } else {
        // Inside contraction.
        for (std::size_t k = 0; k < n; ++k) {
          xt[k] = centroid[k] - gamma * (centroid[k] - verts[worst][k]);
        }
        const double fc = ev(xt);
        if (fc < fvals[worst]) {
          verts[worst] = xt;
          fvals[worst] = fc;
        } else {
          shrink = true;
        }
      }

      if (shrink) {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < n; ++k) {
            verts[i][k] =
                verts[best][k] + delta * (verts[i][k] - verts[best][k]);
          }
          fvals[i] = ev(verts[i]);
        }
      }
    }
  });
}

}  // namespace requp::detail

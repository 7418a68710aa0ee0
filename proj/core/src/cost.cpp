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

#include "requp/cost.hpp"

#include <cmath>
#include <stdexcept>

namespace requp {

namespace {

void require_nonempty(const Dataset& data, const char* who) {
  if (data.points.empty()) {
    throw std::invalid_argument(std::string(who) + ": dataset is empty");
  }
}

void require_planar(const CircuitShape& shape, const char* who) {
  if (shape.data_dim != 2) {
    throw std::invalid_argument(std::string(who) +
                                ": datasets are 2-dimensional");
  }
}

double point_fidelity(const CircuitShape& shape, std::span<const double> params,
                      const LabeledPoint& p) {
  const std::array<double, 2> x{p.x1, p.x2};
  const QubitState state = forward(shape, params, x);
  return p.label == Label::A ? std::norm(state.amp0) : std::norm(state.amp1);
}

}  // namespace

double fidelity_cost(const CircuitShape& shape, std::span<const double> params,
                     const Dataset& data) {
  require_nonempty(data, "fidelity_cost");
  require_planar(shape, "fidelity_cost");
  // Sequential sum in point order; the sum order is part of the
  // bit-reproducibility contract.
  double total = 0.0;
  for (const LabeledPoint& p : data.points) {
    total += 1.0 - point_fidelity(shape, params, p);
  }
  return total;
}

double trace_cost(const CircuitShape& shape, std::span<const double> params,
                  const Dataset& data) {
  require_nonempty(data, "trace_cost");
  require_planar(shape, "trace_cost");
  double total = 0.0;
  for (const LabeledPoint& p : data.points) {
    const std::array<double, 2> x{p.x1, p.x2};
    total += trace_distance(label_state(p.label), forward(shape, params, x));
  }
  return total;
}

double cost_value(CostKind kind, const CircuitShape& shape,
                  std::span<const double> params, const Dataset& data) {
  return kind == CostKind::Fidelity ? fidelity_cost(shape, params, data)
                                    : trace_cost(shape, params, data);
}

std::vector<double> gradient_fd(CostKind kind, const CircuitShape& shape,
                                std::span<const double> params,
                                const Dataset& data, double h) {
  require_nonempty(data, "gradient_fd");
  if (!(h > 0.0)) {
    throw std::invalid_argument("gradient_fd: step must be positive");
  }
  std::vector<double> work(params.begin(), params.end());
  std::vector<double> grad(params.size());
  for (std::size_t i = 0; i < work.size(); ++i) {
    const double saved = work[i];
    work[i] = saved + h;
    const double plus = cost_value(kind, shape, work, data);
    work[i] = saved - h;
    const double minus = cost_value(kind, shape, work, data);
    work[i] = saved;
    grad[i] = (plus - minus) / (2.0 * h);
  }
  return grad;
}

std::vector<double> gradient_shift(CostKind kind, const CircuitShape& shape,
                                   std::span<const double> params,
                                   const Dataset& data) {
  if (kind != CostKind::Fidelity) {
    throw std::logic_error(
        "gradient_shift: only the fidelity cost has a parameter-shift rule");
  }
  require_nonempty(data, "gradient_shift");
  require_planar(shape, "gradient_shift");
  const int stride = 3 + shape.data_dim;
  std::vector<double> work(params.begin(), params.end());
  std::vector<double> grad(params.size());
  constexpr double kShift = 1.5707963267948966;  // pi/2

  for (const LabeledPoint& p : data.points) {
    const std::array<double, 2> x{p.x1, p.x2};
    for (int layer = 0; layer < shape.layers; ++layer) {
      for (int k = 0; k < 3; ++k) {
        const std::size_t theta_idx =
            static_cast<std::size_t>(layer * stride + k);
        const double saved = work[theta_idx];
        work[theta_idx] = saved + kShift;
        const double f_plus = point_fidelity(shape, work, p);
        work[theta_idx] = saved - kShift;
        const double f_minus = point_fidelity(shape, work, p);
        work[theta_idx] = saved;
        // Per-term cost is 1 - F, hence the sign flip.
        const double d_angle = -0.5 * (f_plus - f_minus);
        grad[theta_idx] += d_angle;
        if (k < shape.data_dim) {
          grad[static_cast<std::size_t>(layer * stride + 3 + k)] +=
              d_angle * x[static_cast<std::size_t>(k)];
        }
      }
    }
  }
  return grad;
}

const char* to_string(CostKind kind) {
  return kind == CostKind::Fidelity ? "fidelity" : "trace";
}

CostKind cost_from_string(const std::string& name) {
  if (name == "fidelity") return CostKind::Fidelity;
  if (name == "trace") return CostKind::TraceDistance;
  throw std::invalid_argument("unknown cost function: " + name);
}

}  // namespace requp

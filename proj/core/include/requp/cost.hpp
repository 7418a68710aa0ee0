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

#include <span>
#include <string>
#include <vector>

#include "requp/circuit.hpp"
#include "requp/data.hpp"

namespace requp {

enum class CostKind { Fidelity, TraceDistance };

/// Sum over the dataset of (1 - fidelity(label state, forward state)).
/// Zero exactly when every point's state coincides with its label state.
double fidelity_cost(const CircuitShape& shape, std::span<const double> params,
                     const Dataset& data);

/// Sum over the dataset of trace_distance(label state, forward state).
/// Per-point terms are unsquared; squaring them would collapse this
/// objective onto the fidelity cost (D^2 = 1 - F for pure states).
double trace_cost(const CircuitShape& shape, std::span<const double> params,
                  const Dataset& data);

double cost_value(CostKind kind, const CircuitShape& shape,
                  std::span<const double> params, const Dataset& data);

/// Central finite differences, coordinate by coordinate:
/// (f(p + h e_i) - f(p - h e_i)) / (2h).
std::vector<double> gradient_fd(CostKind kind, const CircuitShape& shape,
                                std::span<const double> params,
                                const Dataset& data, double h = 1e-6);

/// Exact gradient of the fidelity cost via the parameter-shift rule: every
/// effective angle enters through a half-angle rotation generator, so
/// dF/dphi = (F(phi + pi/2) - F(phi - pi/2)) / 2 per point. Weight
/// components pick up the chain-rule factor x_k of each data point.
/// Throws for CostKind::TraceDistance, which has no shift rule here.
std::vector<double> gradient_shift(CostKind kind, const CircuitShape& shape,
                                   std::span<const double> params,
                                   const Dataset& data);

const char* to_string(CostKind kind);
CostKind cost_from_string(const std::string& name);

}  // namespace requp

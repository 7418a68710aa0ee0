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
#include <span>
#include <vector>

#include "requp/data.hpp"
#include "requp/qstate.hpp"

namespace requp {

/// Geometry of a re-uploading classifier: N layers over d-dimensional data
/// (d in {1, 2, 3}). Each layer is one general rotation su2(phi1, phi2, phi3)
/// whose first d angles depend affinely on the data point, giving
/// (3 + d) * N trainable parameters.
struct CircuitShape {
  int layers;
  int data_dim;
};

/// Flat trainable parameter array. Layout, per layer l:
///   [theta_{l,1}, theta_{l,2}, theta_{l,3}, w_{l,1}, ..., w_{l,d}]
/// so effective angle k of layer l is theta_{l,k} + w_{l,k} * x_k for k <= d
/// and theta_{l,k} unchanged for d < k <= 3.
using ParamVector = std::vector<double>;

/// Outcome of one classification: predicted label, the measured P(0), and
/// the decision threshold (bias) that produced the label.
struct Decision {
  Label label;
  double p_zero;
  double bias;
};

/// (3 + d) * N. Throws for layers < 1 or data_dim outside {1, 2, 3}.
int param_count(const CircuitShape& shape);

/// Reference state for a class: |0> for A, |1> for B.
QubitState label_state(Label label);

std::array<double, 3> layer_angles(const CircuitShape& shape,
                                   std::span<const double> params,
                                   int layer_index, std::span<const double> x);

/// |psi> = L(N) ... L(1) |0> with L(l) = su2(layer_angles(l)).
QubitState forward(const CircuitShape& shape, std::span<const double> params,
                   std::span<const double> x);

/// Label A iff P(0) > lambda; a tie (P(0) == lambda) goes to class B.
/// lambda = 0.5 reproduces the plain P(0) > P(1) rule.
Decision classify(const CircuitShape& shape, std::span<const double> params,
                  std::span<const double> x, double lambda);

/// Smallest threshold in {0} u {P(0) of each training point} u {1} that
/// maximizes training accuracy.
double tune_bias(const CircuitShape& shape, std::span<const double> params,
                 const Dataset& train);

/// Fraction of points whose predicted label matches the stored one.
/// Counting is integral, so the result does not depend on evaluation order.
double accuracy(const CircuitShape& shape, std::span<const double> params,
                double lambda, const Dataset& data);

}  // namespace requp

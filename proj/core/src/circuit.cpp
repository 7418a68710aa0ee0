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

#include "requp/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace requp {

namespace {

void validate_shape(const CircuitShape& shape) {
  if (shape.layers < 1) {
    throw std::invalid_argument("circuit: layer count must be >= 1");
  }
  if (shape.data_dim < 1 || shape.data_dim > 3) {
    throw std::invalid_argument("circuit: data dimension must be 1, 2 or 3");
  }
}

void validate_params(const CircuitShape& shape,
                     std::span<const double> params) {
  const auto expected = static_cast<std::size_t>(param_count(shape));
  if (params.size() != expected) {
    throw std::invalid_argument(
        "circuit: parameter vector has length " +
        std::to_string(params.size()) + ", shape requires " +
        std::to_string(expected));
  }
  for (double v : params) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("circuit: parameters must be finite");
    }
  }
}

void validate_point(const CircuitShape& shape, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(shape.data_dim)) {
    throw std::invalid_argument("circuit: data point has dimension " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(shape.data_dim));
  }
}

}  // namespace

int param_count(const CircuitShape& shape) {
  validate_shape(shape);
  return (3 + shape.data_dim) * shape.layers;
}

QubitState label_state(Label label) {
  return label == Label::A ? ket0() : ket1();
}

std::array<double, 3> layer_angles(const CircuitShape& shape,
                                   std::span<const double> params,
                                   int layer_index,
                                   std::span<const double> x) {
  validate_params(shape, params);
  validate_point(shape, x);
  if (layer_index < 0 || layer_index >= shape.layers) {
    throw std::invalid_argument("circuit: layer index out of range");
  }
  const int stride = 3 + shape.data_dim;
  const double* p = params.data() + layer_index * stride;
  std::array<double, 3> angles{p[0], p[1], p[2]};
  for (int k = 0; k < shape.data_dim; ++k) {
    angles[static_cast<std::size_t>(k)] += p[3 + k] * x[k];
  }
  return angles;
}

QubitState forward(const CircuitShape& shape, std::span<const double> params,
                   std::span<const double> x) {
  validate_params(shape, params);
  validate_point(shape, x);
  const int stride = 3 + shape.data_dim;
  QubitState state = ket0();
  for (int layer = 0; layer < shape.layers; ++layer) {
    const double* p = params.data() + layer * stride;
    double a = p[0];
    double b = p[1];
    double c = p[2];
    // Same affine injection as layer_angles, inlined off the hot path checks.
    a += shape.data_dim >= 1 ? p[3] * x[0] : 0.0;
    b += shape.data_dim >= 2 ? p[4] * x[1] : 0.0;
    c += shape.data_dim >= 3 ? p[5] * x[2] : 0.0;
    state = apply(su2(a, b, c), state);
  }
  return state;
}

Decision classify(const CircuitShape& shape, std::span<const double> params,
                  std::span<const double> x, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("classify: bias must lie in [0, 1]");
  }
  const QubitState state = forward(shape, params, x);
  const double p_zero = std::norm(state.amp0);
  return {p_zero > lambda ? Label::A : Label::B, p_zero, lambda};
}

double tune_bias(const CircuitShape& shape, std::span<const double> params,
                 const Dataset& train) {
  if (train.points.empty()) {
    throw std::invalid_argument("tune_bias: training dataset is empty");
  }
  if (shape.data_dim != 2) {
    throw std::invalid_argument("tune_bias: datasets are 2-dimensional");
  }
  std::vector<double> p_zeros;
  p_zeros.reserve(train.points.size());
  for (const LabeledPoint& p : train.points) {
    const std::array<double, 2> x{p.x1, p.x2};
    p_zeros.push_back(std::norm(forward(shape, params, x).amp0));
  }
  std::vector<double> candidates;
  candidates.reserve(train.points.size() + 2);
  candidates.push_back(0.0);
  candidates.insert(candidates.end(), p_zeros.begin(), p_zeros.end());
  candidates.push_back(1.0);
  std::sort(candidates.begin(), candidates.end());

  double best_lambda = 0.0;
  int best_correct = -1;
  for (double lambda : candidates) {
    int correct = 0;
    for (std::size_t i = 0; i < p_zeros.size(); ++i) {
      const Label predicted = p_zeros[i] > lambda ? Label::A : Label::B;
      if (predicted == train.points[i].label) ++correct;
    }
    if (correct > best_correct) {
      best_correct = correct;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

double accuracy(const CircuitShape& shape, std::span<const double> params,
                double lambda, const Dataset& data) {
  if (data.points.empty()) {
    throw std::invalid_argument("accuracy: dataset is empty");
  }
  if (shape.data_dim != 2) {
    throw std::invalid_argument("accuracy: datasets are 2-dimensional");
  }
  int correct = 0;
  for (const LabeledPoint& p : data.points) {
    const std::array<double, 2> x{p.x1, p.x2};
    if (classify(shape, params, x, lambda).label == p.label) ++correct;
  }
  return static_cast<double>(correct) /
         static_cast<double>(data.points.size());
}

}  // namespace requp

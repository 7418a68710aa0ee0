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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "requp/cost.hpp"
#include "requp/rng.hpp"

using namespace requp;

namespace {

constexpr double kPi = 3.14159265358979323846;

Dataset single_point(Label label) {
  Dataset d;
  d.points.push_back({0.2, -0.3, label});
  return d;
}

ParamVector random_params(const CircuitShape& shape, SplitMix64& rng) {
  ParamVector p(static_cast<std::size_t>(param_count(shape)));
  for (double& v : p) v = rng.next_range(-kPi, kPi);
  return p;
}

// Equation-by-equation reference: per point, 1 - |<label|psi>|^2 via the
// test-side matrix chain.
double oracle_fidelity_cost(const CircuitShape& shape, const ParamVector& p,
                            const Dataset& data) {
  double total = 0.0;
  for (const LabeledPoint& pt : data.points) {
    const std::array<double, 2> x{pt.x1, pt.x2};
    const oracle::Vec2 psi =
        oracle::forward_chain(shape.layers, shape.data_dim, p, x);
    const double f = pt.label == Label::A ? std::norm(psi[0]) : std::norm(psi[1]);
    total += 1.0 - f;
  }
  return total;
}

}  // namespace

TEST_CASE("fidelity_cost") {
  const CircuitShape shape{1, 2};
  ParamVector zeros(5, 0.0);

  CHECK(fidelity_cost(shape, zeros, single_point(Label::A)) ==
        doctest::Approx(0.0));
  CHECK(fidelity_cost(shape, zeros, single_point(Label::B)) ==
        doctest::Approx(1.0));

  SUBCASE("term-by-term oracle") {
    SplitMix64 rng(50);
    const CircuitShape deep{3, 2};
    for (int trial = 0; trial < 20; ++trial) {
      const Dataset d = generate(Pattern::Circle, 5, 500 + trial);
      const ParamVector p = random_params(deep, rng);
      CHECK(fidelity_cost(deep, p, d) ==
            doctest::Approx(oracle_fidelity_cost(deep, p, d)).epsilon(1e-12));
    }
  }

  SUBCASE("empty dataset") {
    Dataset empty;
    CHECK_THROWS_AS(fidelity_cost(shape, zeros, empty), std::invalid_argument);
  }
}

TEST_CASE("trace_cost") {
  const CircuitShape shape{1, 2};
  ParamVector zeros(5, 0.0);

  CHECK(trace_cost(shape, zeros, single_point(Label::A)) ==
        doctest::Approx(0.0));
  CHECK(trace_cost(shape, zeros, single_point(Label::B)) ==
        doctest::Approx(1.0));

  SUBCASE("per-term identity: trace term equals sqrt(1 - fidelity term)") {
    SplitMix64 rng(51);
    const CircuitShape deep{2, 2};
    for (int trial = 0; trial < 20; ++trial) {
      const Dataset d = generate(Pattern::Line, 7, 600 + trial);
      const ParamVector p = random_params(deep, rng);
      double expected = 0.0;
      for (const LabeledPoint& pt : d.points) {
        const std::array<double, 2> x{pt.x1, pt.x2};
        const oracle::Vec2 psi = oracle::forward_chain(2, 2, p, x);
        const double f =
            pt.label == Label::A ? std::norm(psi[0]) : std::norm(psi[1]);
        expected += std::sqrt(std::max(0.0, 1.0 - f));
      }
      CHECK(std::abs(trace_cost(deep, p, d) - expected) < 1e-10);
    }
  }
}

TEST_CASE("cost properties") {
  SplitMix64 rng(52);
  const CircuitShape shape{2, 2};

  SUBCASE("non-negativity and zero at a perfect fit") {
    for (int trial = 0; trial < 10; ++trial) {
      const Dataset d = generate(Pattern::Circle, 9, 700 + trial);
      const ParamVector p = random_params(shape, rng);
      CHECK(fidelity_cost(shape, p, d) >= 0.0);
      CHECK(trace_cost(shape, p, d) >= 0.0);
    }
    // A perfect single-point fit zeroes both costs at once.
    const CircuitShape one{1, 2};
    Dataset b = single_point(Label::B);
    const ParamVector flip{0.0, kPi, 0.0, 0.0, 0.0};
    CHECK(fidelity_cost(one, flip, b) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(trace_cost(one, flip, b) == doctest::Approx(0.0).epsilon(1e-10));
  }

  SUBCASE("additivity over dataset concatenation") {
    for (int trial = 0; trial < 10; ++trial) {
      const Dataset d1 = generate(Pattern::Circle, 6, 800 + trial);
      const Dataset d2 = generate(Pattern::Line, 5, 900 + trial);
      Dataset joined = d1;
      joined.points.insert(joined.points.end(), d2.points.begin(),
                           d2.points.end());
      const ParamVector p = random_params(shape, rng);
      CHECK(std::abs(fidelity_cost(shape, p, joined) -
                     fidelity_cost(shape, p, d1) -
                     fidelity_cost(shape, p, d2)) < 1e-10);
      CHECK(std::abs(trace_cost(shape, p, joined) - trace_cost(shape, p, d1) -
                     trace_cost(shape, p, d2)) < 1e-10);
    }
  }
}

TEST_CASE("gradient_fd") {
  const CircuitShape shape{1, 2};

  SUBCASE("weight gradient vanishes at the origin point") {
    Dataset d;
    d.points.push_back({0.0, 0.0, Label::A});
    ParamVector p{0.3, 0.7, -0.2, 0.5, -0.4};
    const auto grad = gradient_fd(CostKind::Fidelity, shape, p, d);
    CHECK(grad[3] == doctest::Approx(0.0));  // x_k multiplies the weight
    CHECK(grad[4] == doctest::Approx(0.0));
  }

  SUBCASE("even symmetry zeroes the stationary component") {
    Dataset d;
    d.points.push_back({0.0, 0.0, Label::A});
    ParamVector zeros(5, 0.0);
    const auto grad = gradient_fd(CostKind::Fidelity, shape, zeros, d);
    for (double g : grad) CHECK(std::abs(g) < 1e-6);
  }

  SUBCASE("step validation") {
    ParamVector zeros(5, 0.0);
    CHECK_THROWS_AS(
        gradient_fd(CostKind::Fidelity, shape, zeros, single_point(Label::A), 0.0),
        std::invalid_argument);
    CHECK_THROWS_AS(gradient_fd(CostKind::Fidelity, shape, zeros,
                                single_point(Label::A), -1e-6),
                    std::invalid_argument);
  }
}

TEST_CASE("gradient_shift") {
  const CircuitShape shape{1, 2};

  SUBCASE("rejects the trace cost") {
    ParamVector zeros(5, 0.0);
    CHECK_THROWS_AS(gradient_shift(CostKind::TraceDistance, shape, zeros,
                                   single_point(Label::A)),
                    std::logic_error);
  }

  SUBCASE("single-layer closed form") {
    // For one class-A point at x = 0, the cost is sin^2(theta2 / 2), so the
    // only nonzero derivative is d/dtheta2 = sin(theta2) / 2.
    Dataset d;
    d.points.push_back({0.0, 0.0, Label::A});
    const double theta2 = 0.9;
    ParamVector p{0.4, theta2, -0.2, 0.6, -0.8};
    const auto grad = gradient_shift(CostKind::Fidelity, shape, p, d);
    CHECK(std::abs(grad[0]) < 1e-12);
    CHECK(grad[1] == doctest::Approx(std::sin(theta2) / 2.0).epsilon(1e-12));
    CHECK(std::abs(grad[2]) < 1e-12);
    CHECK(std::abs(grad[3]) < 1e-12);
    CHECK(std::abs(grad[4]) < 1e-12);
  }

  SUBCASE("zero weights, zero data: weight gradient is exactly zero") {
    Dataset d;
    d.points.push_back({0.0, 0.0, Label::B});
    ParamVector p{0.1, 0.2, 0.3, 0.0, 0.0};
    const auto grad = gradient_shift(CostKind::Fidelity, shape, p, d);
    CHECK(grad[3] == 0.0);
    CHECK(grad[4] == 0.0);
  }

  SUBCASE("agrees with central differences on random instances") {
    SplitMix64 rng(53);
    for (int trial = 0; trial < 50; ++trial) {
      const int layers = 1 + static_cast<int>(rng.next() % 3);
      const int points = 1 + static_cast<int>(rng.next() % 10);
      const CircuitShape s{layers, 2};
      const Dataset d = generate(
          trial % 2 == 0 ? Pattern::Circle : Pattern::Line, points,
          1000 + static_cast<std::uint64_t>(trial));
      const ParamVector p = random_params(s, rng);
      const auto shift = gradient_shift(CostKind::Fidelity, s, p, d);
      const auto fd = gradient_fd(CostKind::Fidelity, s, p, d, 1e-6);
      REQUIRE(shift.size() == fd.size());
      for (std::size_t i = 0; i < shift.size(); ++i) {
        CHECK(std::abs(shift[i] - fd[i]) < 1e-5);
      }
    }
  }
}

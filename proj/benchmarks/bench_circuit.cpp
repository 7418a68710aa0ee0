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

#include <benchmark/benchmark.h>

#include <array>

#include "requp/cost.hpp"
#include "requp/harness.hpp"

namespace {

using namespace requp;

void ForwardPass(benchmark::State& state) {
  const int layers = static_cast<int>(state.range(0));
  const CircuitShape shape{layers, 2};
  const ParamVector params = initial_params(shape, 1);
  const std::array<double, 2> x{0.31, -0.77};
  for (auto _ : state) {
    QubitState s = forward(shape, params, x);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(ForwardPass)->Arg(1)->Arg(3)->Arg(5);

void FidelityCost(benchmark::State& state) {
  const CircuitShape shape{5, 2};
  const ParamVector params = initial_params(shape, 2);
  const Dataset data =
      generate(Pattern::Circle, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fidelity_cost(shape, params, data));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(FidelityCost)->Arg(50)->Arg(200)->Arg(4000);

void TraceCost(benchmark::State& state) {
  const CircuitShape shape{5, 2};
  const ParamVector params = initial_params(shape, 2);
  const Dataset data =
      generate(Pattern::Circle, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace_cost(shape, params, data));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(TraceCost)->Arg(50)->Arg(200);

void GradientFiniteDifference(benchmark::State& state) {
  const CircuitShape shape{5, 2};
  const ParamVector params = initial_params(shape, 4);
  const Dataset data = generate(Pattern::Circle, 35, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gradient_fd(CostKind::Fidelity, shape, params, data));
  }
}
BENCHMARK(GradientFiniteDifference);

void GradientParameterShift(benchmark::State& state) {
  const CircuitShape shape{5, 2};
  const ParamVector params = initial_params(shape, 4);
  const Dataset data = generate(Pattern::Circle, 35, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gradient_shift(CostKind::Fidelity, shape, params, data));
  }
}
BENCHMARK(GradientParameterShift);

void Accuracy4000(benchmark::State& state) {
  const CircuitShape shape{5, 2};
  const ParamVector params = initial_params(shape, 6);
  const Dataset data = generate(Pattern::Line, 4000, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(accuracy(shape, params, 0.5, data));
  }
}
BENCHMARK(Accuracy4000);

}  // namespace

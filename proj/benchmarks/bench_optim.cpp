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

#include "requp/cost.hpp"
#include "requp/harness.hpp"
#include "requp/optim.hpp"

namespace {

using namespace requp;

const Method kMethods[] = {Method::LBFGS, Method::COBYLA, Method::NelderMead,
                           Method::SLSQP};

void SphereKernel(benchmark::State& state) {
  const Method method = kMethods[state.range(0)];
  const std::vector<double> x0(5, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize(testfn::sphere, x0, method));
  }
  state.SetLabel(to_string(method));
}
BENCHMARK(SphereKernel)->DenseRange(0, 3);

void RosenbrockKernel(benchmark::State& state) {
  const Method method = kMethods[state.range(0)];
  const std::vector<double> x0{-1.2, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize(testfn::rosenbrock2, x0, method));
  }
  state.SetLabel(to_string(method));
}
BENCHMARK(RosenbrockKernel)->DenseRange(0, 3);

// One full training repetition of the five-layer classifier.
void TrainRepetition(benchmark::State& state) {
  ExperimentCell cell;
  cell.cost = CostKind::Fidelity;
  cell.pattern = Pattern::Circle;
  cell.method = kMethods[state.range(0)];
  cell.mode = DatasetMode::Fixed;
  cell.layers = 5;
  cell.train_size = 35;
  cell.test_size = 400;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_repetition(cell, 0));
  }
  state.SetLabel(to_string(cell.method));
}
BENCHMARK(TrainRepetition)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

/* Copyright 2026 The qcl3 Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include <benchmark/benchmark.h>

#include <numbers>

#include "qcl3/dynamics.hpp"
#include "qcl3/dyson.hpp"
#include "qcl3/grape.hpp"
#include "qcl3/landscape.hpp"
#include "qcl3/rng.hpp"

using namespace qcl3;

namespace {

PiecewiseControl bench_control(int d) {
  CounterRng rng(7);
  std::vector<double> c(static_cast<std::size_t>(d));
  for (auto& x : c) x = rng.uniform(-1.0, 1.0);
  return PiecewiseControl(std::move(c), 10.0);
}

void BM_HermEig(benchmark::State& state) {
  const ThreeLevelSystem s2 = ThreeLevelSystem::s2();
  CMat3 h = s2.free_hamiltonian();
  h += 0.37 * s2.interaction();
  for (auto _ : state) {
    benchmark::DoNotOptimize(herm_eig(h));
  }
}
BENCHMARK(BM_HermEig);

void BM_ExpmUnitary(benchmark::State& state) {
  const ThreeLevelSystem s2 = ThreeLevelSystem::s2();
  CMat3 h = s2.free_hamiltonian();
  h += 0.37 * s2.interaction();
  for (auto _ : state) {
    benchmark::DoNotOptimize(expm_unitary(h, 0.05));
  }
}
BENCHMARK(BM_ExpmUnitary);

void BM_Propagate(benchmark::State& state) {
  const ThreeLevelSystem s2 = ThreeLevelSystem::s2();
  const PiecewiseControl control = bench_control(static_cast<int>(state.range(0)));
  PropagationTrace trace;
  for (auto _ : state) {
    propagate_into(s2, control, trace);
    benchmark::DoNotOptimize(trace.final_unitary());
  }
}
BENCHMARK(BM_Propagate)->Arg(50)->Arg(200);

void BM_Gradient(benchmark::State& state) {
  const ThreeLevelSystem s2 = ThreeLevelSystem::s2();
  const Observable obs = Observable::standard(1.0);
  const InitialState init(3);
  const PiecewiseControl control = bench_control(200);
  const PropagationTrace trace = propagate(s2, control);
  const CMat3 v = s2.interaction(), o = obs.matrix(), rho0 = init.density_matrix();
  std::vector<double> grad;
  for (auto _ : state) {
    gradient_from_trace(trace, v, o, rho0, grad);
    benchmark::DoNotOptimize(grad.data());
  }
}
BENCHMARK(BM_Gradient);

void BM_GrapeIteration(benchmark::State& state) {
  // One full optimizer step: propagation plus gradient at D = 200.
  const ThreeLevelSystem s2 = ThreeLevelSystem::s2();
  const Observable obs = Observable::standard(1.0);
  const InitialState init(3);
  PiecewiseControl control = bench_control(200);
  const CMat3 v = s2.interaction(), o = obs.matrix(), rho0 = init.density_matrix();
  PropagationTrace trace;
  std::vector<double> grad;
  for (auto _ : state) {
    propagate_into(s2, control, trace);
    gradient_from_trace(trace, v, o, rho0, grad);
    for (int k = 0; k < 200; ++k) control.c[static_cast<std::size_t>(k)] += 0.2 * grad[static_cast<std::size_t>(k)];
    benchmark::DoNotOptimize(control.c.data());
  }
}
BENCHMARK(BM_GrapeIteration);

void BM_FormA4(benchmark::State& state) {
  const ThreeLevelSystem s2 = ThreeLevelSystem::s2();
  const CubicSystemSolution sol = canonical_special_solution();
  const AnalyticControl f4 = AnalyticControl::special_family(sol.A, sol.B, sol.C);
  for (auto _ : state) {
    benchmark::DoNotOptimize(form_A(s2, 1, 3, 4, f4));
  }
}
BENCHMARK(BM_FormA4);

void BM_Variation(benchmark::State& state) {
  const ThreeLevelSystem s2 = ThreeLevelSystem::s2();
  const Observable obs = Observable::standard(1.0);
  const CubicSystemSolution sol = canonical_special_solution();
  const AnalyticControl f4 = AnalyticControl::special_family(sol.A, sol.B, sol.C);
  for (auto _ : state) {
    benchmark::DoNotOptimize(variation(s2, obs, f4));
  }
}
BENCHMARK(BM_Variation);

void BM_QuadratureOracle(benchmark::State& state) {
  const AnalyticControl f4 = AnalyticControl::special_family(1.0, 1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadrature_phase_integral({1.0, -1.0, -1.0}, f4, 1e-8));
  }
}
BENCHMARK(BM_QuadratureOracle);

}  // namespace

BENCHMARK_MAIN();

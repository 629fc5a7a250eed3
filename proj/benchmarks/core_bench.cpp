// Copyright 2026 The edlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "edlab/hilbert/fft.hpp"
#include "edlab/hilbert/matrix.hpp"
#include "edlab/hilbert/observable.hpp"
#include "edlab/inequalities/inequalities.hpp"
#include "edlab/metrics/noise_disturbance.hpp"
#include "edlab/metrics/povm.hpp"
#include "edlab/models/model.hpp"

namespace {

using namespace edlab;

GridSpec grid_of(benchmark::State& state) { return GridSpec(static_cast<std::size_t>(state.range(0)), 40.0); }

void BM_MomentumApply(benchmark::State& state) {
  const auto grid = grid_of(state);
  const auto psi = gaussian_state(grid, 0.0, 0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(apply_momentum(grid, psi.amplitudes()));
}
BENCHMARK(BM_MomentumApply)->RangeMultiplier(2)->Range(256, 4096);

void BM_NoiseDisturbance(benchmark::State& state) {
  const auto grid = grid_of(state);
  const auto model = build_von_neumann(gaussian_state(grid, 0.0, 0.0, 1.0));
  const auto initial = model.prepare(gaussian_state(grid, 0.0, 0.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_noise_disturbance(model, initial));
}
BENCHMARK(BM_NoiseDisturbance)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_RelationTable(benchmark::State& state) {
  const auto grid = grid_of(state);
  const auto model = build_ozawa_contractive(gaussian_state(grid, 0.0, 0.0, 1.0));
  const auto initial = model.prepare(gaussian_state(grid, 0.0, 0.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_relations(model, initial));
}
BENCHMARK(BM_RelationTable)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_TranslationKernel(benchmark::State& state) {
  const auto grid = grid_of(state);
  const auto model = build_von_neumann(gaussian_state(grid, 0.0, 0.0, 1.0), 0.37);
  const auto initial = model.prepare(gaussian_state(grid, 0.0, 0.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(model.propagate(initial));
}
BENCHMARK(BM_TranslationKernel)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_MatrixOracle(benchmark::State& state) {
  const GridSpec grid(static_cast<std::size_t>(state.range(0)), 16.0);
  const auto model = build_von_neumann(gaussian_state(grid, 0.0, 0.0, 1.0));
  const auto h = hamiltonian_matrix(model, grid, grid);
  const auto c = to_coefficients(model.prepare(gaussian_state(grid, 0.5, 0.0, 1.0)).vector());
  for (auto _ : state) benchmark::DoNotOptimize(matrix_oracle_evolve(h, 1.0, c));
}
BENCHMARK(BM_MatrixOracle)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ExtractPovm(benchmark::State& state) {
  const GridSpec object(64, 8.0);
  const auto model = build_von_neumann(gaussian_state(GridSpec(64, 16.0), 0.0, 0.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(extract_povm(model, object));
}
BENCHMARK(BM_ExtractPovm)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

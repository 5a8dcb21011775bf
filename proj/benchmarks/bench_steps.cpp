// Copyright 2026 The acstab Authors.
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

#include "acstab/field.hpp"
#include "acstab/schemes.hpp"

namespace {

acstab::SchemeKind kind_of(int64_t id) {
  switch (id) {
    case 0: return acstab::SchemeKind::be();
    case 1: return acstab::SchemeKind::cn();
    case 2: return acstab::SchemeKind::modcn();
    default: return acstab::SchemeKind::dirk();
  }
}

// One implicit step from a perturbed constant; args: scheme, dim, points per axis.
void BM_Step(benchmark::State& state) {
  const auto kind = kind_of(state.range(0));
  const int dim = static_cast<int>(state.range(1));
  const auto grid = acstab::make_grid(dim, static_cast<int>(state.range(2)));
  const auto mode = dim == 1 ? acstab::ModeIndex::from_integers({1}) : acstab::ModeIndex::from_integers({1, 1});
  acstab::ScalarField phi = acstab::ScalarField::constant(grid, 0.5);
  phi.values() += 0.1 * acstab::eval_mode(mode, grid).values();
  const acstab::ACParams p{0.1, 0.005};
  for (auto _ : state) benchmark::DoNotOptimize(acstab::step(kind, phi, p));
  state.SetLabel(kind.name());
  state.counters["unknowns"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_Step)
    ->ArgsProduct({{0, 1, 2, 3}, {1}, {257, 1025}})
    ->ArgsProduct({{0, 1, 2, 3}, {2}, {33, 65}})
    ->Unit(benchmark::kMicrosecond);

void BM_LaplacianAssembly(benchmark::State& state) {
  const auto grid = acstab::make_grid(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(acstab::laplacian_matrix(grid));
}
BENCHMARK(BM_LaplacianAssembly)->Arg(65)->Arg(129)->Unit(benchmark::kMicrosecond);

void BM_Simulate(benchmark::State& state) {
  const auto grid = acstab::make_grid(1, 257);
  const auto phi0 = acstab::ScalarField::constant(grid, 1.9931);
  for (auto _ : state) {
    benchmark::DoNotOptimize(acstab::simulate(acstab::SchemeKind::cn(), phi0, 50, {0.1, 0.01}));
  }
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

}  // namespace

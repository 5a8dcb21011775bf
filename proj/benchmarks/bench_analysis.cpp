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

#include "acstab/robustness.hpp"

namespace {

void BM_IntervalSequence(benchmark::State& state) {
  const auto kind = state.range(0) == 0 ? acstab::SchemeKind::cn() : acstab::SchemeKind::dirk();
  const int count = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(acstab::interval_sequence(kind, 0.001, count));
  state.SetLabel(kind.name());
}
BENCHMARK(BM_IntervalSequence)->ArgsProduct({{0, 1}, {4, 16}});

void BM_ClassifyConstant(benchmark::State& state) {
  const auto kind = acstab::SchemeKind::cn();
  const auto p = acstab::params_for_ratio(kind, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(acstab::classify_constant_initial(kind, 3.8, p, 400));
}
BENCHMARK(BM_ClassifyConstant);

// Newton-homotopy preimage of c + delta cos(k pi x) on the branch through r.
void BM_PreimageField(benchmark::State& state) {
  const bool dirk = state.range(0) == 1;
  const auto kind = dirk ? acstab::SchemeKind::dirk() : acstab::SchemeKind::cn();
  const double c = dirk ? -7.0 : 0.984375;
  const acstab::ACParams p{0.1, 0.01};
  const auto roots = acstab::preimage_constants(kind, c, p).roots;
  const double seed = roots.front();
  const auto grid = acstab::make_grid(1, static_cast<int>(state.range(1)));
  const auto shape = acstab::eval_mode(acstab::ModeIndex::from_integers({1}), grid);
  acstab::HomotopyConfig h;
  h.delta_end = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        acstab::preimage_field(kind, c, shape, acstab::ScalarField::constant(grid, seed), p, h));
  }
  state.SetLabel(kind.name());
}
BENCHMARK(BM_PreimageField)->ArgsProduct({{0, 1}, {257}})->Unit(benchmark::kMillisecond);

}  // namespace

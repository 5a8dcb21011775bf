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

#include <array>
#include <random>
#include <vector>

#include "acstab/cubic.hpp"

namespace {

void BM_RealCubicRoots(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<std::array<double, 4>> coeffs(1024);
  for (auto& c : coeffs) c = {u(rng) + 20.0, u(rng), u(rng), u(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& c = coeffs[i++ & 1023];
    benchmark::DoNotOptimize(acstab::real_cubic_roots(c[0], c[1], c[2], c[3]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RealCubicRoots);

}  // namespace

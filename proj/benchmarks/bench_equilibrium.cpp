// Copyright 2026 The corrgame Authors
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

#include "corrgame/equilibrium.hpp"

namespace {

using namespace corrgame;

const GameConstants kPd{-1.0, -1.0, 4.0, 1.0};

void BM_BestResponse(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  const Direction fixed = Direction::from_spherical({0.9, 1.4});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        best_response(kPd, SourceKind::kQuantumCorrelated, fixed, Player::kBob, grid));
  }
}
BENCHMARK(BM_BestResponse)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_RegionScan(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(region_scan(SourceKind::kQuantumCorrelated, grid));
  }
  state.SetItemsProcessed(state.iterations() * grid * grid * grid * grid);
}
BENCHMARK(BM_RegionScan)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_NeSearchHiddenVariable(benchmark::State& state) {
  NeSearchOptions o;
  o.grid_n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ne_search(kPd, SourceKind::kLhvCorrelated, o));
  }
}
BENCHMARK(BM_NeSearchHiddenVariable)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

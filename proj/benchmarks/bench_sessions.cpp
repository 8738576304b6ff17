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

#include "corrgame/correlation_sources.hpp"

namespace {

using namespace corrgame;

void BM_SimulateSession(benchmark::State& state) {
  const auto kind = static_cast<SourceKind>(state.range(0));
  const Direction alpha = Direction::from_spherical({1.2, 0.3});
  const Direction beta = Direction::from_spherical({0.7, 2.1});
  constexpr std::int64_t kPairs = 100000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_session(kind, alpha, beta, kPairs));
  }
  state.SetItemsProcessed(state.iterations() * kPairs);
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_SimulateSession)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

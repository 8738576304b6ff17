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

#include <vector>

#include <benchmark/benchmark.h>

#include "corrgame/bell_payoff.hpp"
#include "corrgame/rng.hpp"

namespace {

using namespace corrgame;

std::vector<CorrelationTriple> triples(std::size_t n) {
  std::vector<CorrelationTriple> out;
  out.reserve(n);
  Rng rng(3);
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  }
  return out;
}

void BM_PqMap(benchmark::State& state) {
  const auto ts = triples(4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pq_map(ts[i++ & 4095]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PqMap);

void BM_CorrelationPayoffs(benchmark::State& state) {
  const auto ts = triples(4096);
  const GameConstants c{-1.0, -1.0, 4.0, 1.0};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(correlation_payoffs(c, ts[i++ & 4095]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CorrelationPayoffs);

}  // namespace

BENCHMARK_MAIN();

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

#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace corrgame::detail {

/// Calls fn(i) for every i in [0, n), striding indices across `workers`
/// threads. Callers write results into per-index slots so the outcome does
/// not depend on the worker count.
template <typename Fn>
void for_each_index(std::int64_t n, unsigned workers, Fn&& fn) {
  const std::int64_t w =
      std::clamp<std::int64_t>(static_cast<std::int64_t>(workers), 1, std::max<std::int64_t>(n, 1));
  if (w == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(w));
  for (std::int64_t k = 0; k < w; ++k) {
    pool.emplace_back([&fn, k, w, n] {
      for (std::int64_t i = k; i < n; i += w) fn(i);
    });
  }
}

}  // namespace corrgame::detail

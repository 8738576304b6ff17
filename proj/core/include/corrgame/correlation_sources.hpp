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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "corrgame/geometry.hpp"
#include "corrgame/rng.hpp"

namespace corrgame {

/// Pair source models. The correlated variants give perfectly correlated
/// outcomes along a shared direction, the anticorrelated ones perfectly
/// opposite outcomes.
enum class SourceKind {
  kQuantumCorrelated,
  kQuantumAnticorrelated,
  kLhvCorrelated,
  kLhvAnticorrelated,
};

inline constexpr std::array<SourceKind, 4> kAllSourceKinds = {
    SourceKind::kQuantumCorrelated, SourceKind::kQuantumAnticorrelated,
    SourceKind::kLhvCorrelated, SourceKind::kLhvAnticorrelated};

/// CLI names: quantum, quantum-anti, lhv, lhv-anti.
std::string_view to_string(SourceKind kind);
/// Throws PreconditionError for an unknown name.
SourceKind parse_source_kind(std::string_view name);

bool is_anticorrelated(SourceKind kind);

enum class AliceSetting { kAlpha, kZ };
enum class BobSetting { kBeta, kZ };

struct MeasurementRecord {
  AliceSetting alice_setting = AliceSetting::kAlpha;
  BobSetting bob_setting = BobSetting::kBeta;
  int alice_outcome = 1;
  int bob_outcome = 1;
};

/// Expected product of outcomes for settings a (Alice) and b (Bob).
///   quantum:       +-(a . b)
///   local hidden:  +-(1 - 2 theta / pi), theta = angle between a and b
double analytic_correlation(SourceKind kind, const Direction& a, const Direction& b);

/// One pair's outcomes (+-1, +-1). Quantum kinds draw from the joint law
/// P(oA, oB) = (1 + oA oB E) / 4; hidden-variable kinds draw a direction
/// lambda uniformly and set oA = sign(a . lambda), oB = +-sign(b . lambda),
/// with sign(0) = +1.
std::pair<int, int> sample_outcomes(SourceKind kind, const Direction& a,
                                    const Direction& b, Rng& rng);

/// Setting-pair buckets of a session.
enum class Bucket : std::size_t {
  kAlphaBeta = 0,  // <ab>
  kAlphaZ = 1,     // <ac>
  kZBeta = 2,      // <bc>
  kZZ = 3,         // <cc>, calibration only
};

std::string_view to_string(Bucket bucket);

struct BucketTally {
  std::int64_t count = 0;
  std::int64_t product_sum = 0;
  // Per-player outcome sums, for marginal-balance checks.
  std::int64_t alice_sum = 0;
  std::int64_t bob_sum = 0;

  friend bool operator==(const BucketTally&, const BucketTally&) = default;
};

struct SessionTally {
  std::array<BucketTally, 4> buckets{};

  const BucketTally& operator[](Bucket b) const {
    return buckets[static_cast<std::size_t>(b)];
  }
  BucketTally& operator[](Bucket b) { return buckets[static_cast<std::size_t>(b)]; }

  std::int64_t total_pairs() const;
  void merge(const SessionTally& other);
  void record(const MeasurementRecord& m);

  friend bool operator==(const SessionTally&, const SessionTally&) = default;
};

struct SessionOptions {
  std::uint64_t seed = 1;
  // Number of threads. Does not affect the result.
  unsigned workers = 1;
};

/// Pairs are generated in fixed-size chunks, chunk i drawing from stream
/// derive_stream_seed(seed, i); the tally is therefore a function of
/// (seed, n_pairs) alone.
inline constexpr std::int64_t kSessionChunkPairs = 1 << 14;

/// Simulates n_pairs rounds of the two-setting protocol: Alice measures along
/// alpha or z, Bob along beta or z, each with probability 1/2 and
/// independently. Throws PreconditionError when n_pairs < 1.
SessionTally simulate_session(SourceKind kind, const Direction& alpha,
                              const Direction& beta, std::int64_t n_pairs,
                              const SessionOptions& options = {});

struct EstimatedTriple {
  double ab = 0.0;
  double ac = 0.0;
  double bc = 0.0;
  double se_ab = 0.0;
  double se_ac = 0.0;
  double se_bc = 0.0;
  double cc = 0.0;
  double se_cc = 0.0;
};

/// Per-bucket mean product with plug-in standard error sqrt((1 - E^2) / n).
/// Throws EstimationError naming the bucket when a bucket has fewer than two
/// pairs.
EstimatedTriple estimate_triple(const SessionTally& tally);

}  // namespace corrgame

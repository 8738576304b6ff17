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

#include "corrgame/correlation_sources.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "corrgame/errors.hpp"
#include "parallel.hpp"

namespace corrgame {

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::kQuantumCorrelated:
      return "quantum";
    case SourceKind::kQuantumAnticorrelated:
      return "quantum-anti";
    case SourceKind::kLhvCorrelated:
      return "lhv";
    case SourceKind::kLhvAnticorrelated:
      return "lhv-anti";
  }
  return "unknown";
}

SourceKind parse_source_kind(std::string_view name) {
  for (SourceKind kind : kAllSourceKinds) {
    if (to_string(kind) == name) return kind;
  }
  throw PreconditionError("unknown source \"" + std::string(name) +
                          "\" (expected quantum, quantum-anti, lhv or lhv-anti)");
}

bool is_anticorrelated(SourceKind kind) {
  return kind == SourceKind::kQuantumAnticorrelated ||
         kind == SourceKind::kLhvAnticorrelated;
}

double analytic_correlation(SourceKind kind, const Direction& a, const Direction& b) {
  const double sign = is_anticorrelated(kind) ? -1.0 : 1.0;
  switch (kind) {
    case SourceKind::kQuantumCorrelated:
    case SourceKind::kQuantumAnticorrelated:
      return sign * std::clamp(dot(a, b), -1.0, 1.0);
    case SourceKind::kLhvCorrelated:
    case SourceKind::kLhvAnticorrelated:
      return sign * (1.0 - 2.0 * angle_between(a, b) / kPi);
  }
  return 0.0;
}

namespace {

int sign_of(double x) { return x >= 0.0 ? 1 : -1; }

}  // namespace

std::pair<int, int> sample_outcomes(SourceKind kind, const Direction& a,
                                    const Direction& b, Rng& rng) {
  switch (kind) {
    case SourceKind::kQuantumCorrelated:
    case SourceKind::kQuantumAnticorrelated: {
      const double e = analytic_correlation(kind, a, b);
      const int alice = rng.coin() ? 1 : -1;
      // P(same) = (1 + E) / 2; exact at E = +-1 since uniform() < 1.
      const bool same = rng.uniform() < 0.5 * (1.0 + e);
      return {alice, same ? alice : -alice};
    }
    case SourceKind::kLhvCorrelated:
    case SourceKind::kLhvAnticorrelated: {
      const Direction lambda = sample_uniform_direction(rng);
      const int alice = sign_of(dot(a, lambda));
      const int bob = sign_of(dot(b, lambda));
      return {alice, is_anticorrelated(kind) ? -bob : bob};
    }
  }
  return {1, 1};
}

std::string_view to_string(Bucket bucket) {
  switch (bucket) {
    case Bucket::kAlphaBeta:
      return "alpha-beta";
    case Bucket::kAlphaZ:
      return "alpha-z";
    case Bucket::kZBeta:
      return "z-beta";
    case Bucket::kZZ:
      return "z-z";
  }
  return "unknown";
}

std::int64_t SessionTally::total_pairs() const {
  std::int64_t n = 0;
  for (const auto& b : buckets) n += b.count;
  return n;
}

void SessionTally::merge(const SessionTally& other) {
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    buckets[i].count += other.buckets[i].count;
    buckets[i].product_sum += other.buckets[i].product_sum;
    buckets[i].alice_sum += other.buckets[i].alice_sum;
    buckets[i].bob_sum += other.buckets[i].bob_sum;
  }
}

void SessionTally::record(const MeasurementRecord& m) {
  Bucket bucket;
  if (m.alice_setting == AliceSetting::kAlpha) {
    bucket = m.bob_setting == BobSetting::kBeta ? Bucket::kAlphaBeta : Bucket::kAlphaZ;
  } else {
    bucket = m.bob_setting == BobSetting::kBeta ? Bucket::kZBeta : Bucket::kZZ;
  }
  BucketTally& t = (*this)[bucket];
  ++t.count;
  t.product_sum += m.alice_outcome * m.bob_outcome;
  t.alice_sum += m.alice_outcome;
  t.bob_sum += m.bob_outcome;
}

namespace {

SessionTally simulate_chunk(SourceKind kind, const Direction& alpha,
                            const Direction& beta, std::int64_t n, std::uint64_t seed) {
  Rng rng(seed);
  const Direction z = Direction::z_axis();
  SessionTally tally;
  for (std::int64_t i = 0; i < n; ++i) {
    MeasurementRecord m;
    m.alice_setting = rng.coin() ? AliceSetting::kAlpha : AliceSetting::kZ;
    m.bob_setting = rng.coin() ? BobSetting::kBeta : BobSetting::kZ;
    const Direction& a = m.alice_setting == AliceSetting::kAlpha ? alpha : z;
    const Direction& b = m.bob_setting == BobSetting::kBeta ? beta : z;
    std::tie(m.alice_outcome, m.bob_outcome) = sample_outcomes(kind, a, b, rng);
    tally.record(m);
  }
  return tally;
}

}  // namespace

SessionTally simulate_session(SourceKind kind, const Direction& alpha,
                              const Direction& beta, std::int64_t n_pairs,
                              const SessionOptions& options) {
  if (n_pairs < 1) {
    throw PreconditionError("n_pairs must be at least 1, got " + std::to_string(n_pairs));
  }
  const std::int64_t n_chunks = (n_pairs + kSessionChunkPairs - 1) / kSessionChunkPairs;
  std::vector<SessionTally> partial(static_cast<std::size_t>(n_chunks));
  auto run_chunk = [&](std::int64_t c) {
    const std::int64_t begin = c * kSessionChunkPairs;
    const std::int64_t n = std::min(kSessionChunkPairs, n_pairs - begin);
    partial[static_cast<std::size_t>(c)] =
        simulate_chunk(kind, alpha, beta, n,
                       derive_stream_seed(options.seed, static_cast<std::uint64_t>(c)));
  };

  detail::for_each_index(n_chunks, options.workers, run_chunk);

  SessionTally total;
  for (const auto& t : partial) total.merge(t);
  return total;
}

namespace {

void estimate_bucket(const SessionTally& tally, Bucket bucket, double& value, double& se) {
  const BucketTally& t = tally[bucket];
  if (t.count < 2) {
    throw EstimationError("bucket " + std::string(to_string(bucket)) + " has " +
                          std::to_string(t.count) +
                          " pair(s); at least 2 are needed to estimate a correlation");
  }
  const double n = static_cast<double>(t.count);
  value = std::clamp(static_cast<double>(t.product_sum) / n, -1.0, 1.0);
  se = std::sqrt(std::max(0.0, 1.0 - value * value) / n);
}

}  // namespace

EstimatedTriple estimate_triple(const SessionTally& tally) {
  EstimatedTriple e;
  estimate_bucket(tally, Bucket::kAlphaBeta, e.ab, e.se_ab);
  estimate_bucket(tally, Bucket::kAlphaZ, e.ac, e.se_ac);
  estimate_bucket(tally, Bucket::kZBeta, e.bc, e.se_bc);
  estimate_bucket(tally, Bucket::kZZ, e.cc, e.se_cc);
  return e;
}

}  // namespace corrgame

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

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "corrgame/bell_payoff.hpp"
#include "corrgame/correlation_sources.hpp"
#include "corrgame/game_model.hpp"
#include "corrgame/geometry.hpp"

namespace corrgame {

struct DirectionalProfile {
  Direction alpha;
  Direction beta;
};

enum class Player { kAlice, kBob };

/// (ab, ac, bc) = analytic correlations at (alpha, beta), (alpha, z), (z, beta).
CorrelationTriple triple_of(SourceKind kind, const DirectionalProfile& profile);

/// Correlation payoffs of a directional profile.
PayoffPair directional_payoffs(const GameConstants& c, SourceKind kind,
                               const DirectionalProfile& profile);

/// Largest angle between corresponding directions of two profiles.
double profile_distance(const DirectionalProfile& a, const DirectionalProfile& b);

/// Representative of the profile's orbit under rotations about z and the
/// reflection y -> -y, both of which leave every correlation unchanged: alpha
/// (or beta, when alpha is on the z-axis) is rotated to phi = 0, then beta is
/// reflected into y >= 0.
DirectionalProfile canonical_profile(const DirectionalProfile& profile);

/// The (theta, phi) lattice used by every grid search: theta_i = i pi / (n - 1)
/// for i < n, phi_j = 2 pi j / n for j < n. Index k = i * n + j.
class DirectionGrid {
 public:
  /// Throws PreconditionError when n < 8.
  explicit DirectionGrid(int n);

  int resolution() const { return n_; }
  std::int64_t size() const { return static_cast<std::int64_t>(n_) * n_; }
  SphericalAngles angles(std::int64_t k) const;
  const Direction& operator[](std::int64_t k) const {
    return directions_[static_cast<std::size_t>(k)];
  }
  /// Largest spacing between neighbouring lattice directions.
  double max_step() const;

 private:
  int n_;
  std::vector<Direction> directions_;
};

struct BestResponse {
  Direction direction;
  double payoff = 0.0;
  // Best payoff found on the lattice before refinement; payoff >= grid_payoff.
  double grid_payoff = 0.0;
};

/// Maximizes the responder's correlation payoff against `fixed`: exhaustive
/// evaluation on a DirectionGrid(grid_n), then a compass search in the
/// tangent plane of the sphere from the best lattice cells, halving the step
/// whenever no move improves the payoff by at least refine_tol.
BestResponse best_response(const GameConstants& c, SourceKind kind,
                           const Direction& fixed, Player who, int grid_n,
                           double refine_tol = 1e-12);

struct EquilibriumCertificate {
  DirectionalProfile profile;
  PayoffPair payoffs;
  double alice_improvement = 0.0;
  double bob_improvement = 0.0;
  double tolerance = 0.0;
  int verified_grid_resolution = 0;

  bool valid() const {
    return alice_improvement <= tolerance && bob_improvement <= tolerance;
  }
};

/// Unilateral improvements at `profile`, each floored at 0.
EquilibriumCertificate certify(const GameConstants& c, SourceKind kind,
                               const DirectionalProfile& profile, int grid_n,
                               double tol);

struct NeSearchOptions {
  int grid_n = 32;
  double tol = 1e-4;
  std::uint64_t seed = 1;
  int random_starts = 8;
  int max_sweeps = 50;
  unsigned workers = 1;
};

struct StartOutcome {
  DirectionalProfile start;
  bool converged = false;
  int sweeps = 0;
  // Set when the fixed point failed re-verification at twice the resolution.
  bool rejected_on_verification = false;
};

struct NeSearchResult {
  // Constant-in-direction games: every profile is an equilibrium.
  bool all_profiles = false;
  std::vector<EquilibriumCertificate> certificates;
  std::vector<StartOutcome> starts;
};

/// Iterated best responses from the axis-aligned starting profiles and
/// `random_starts` seeded random ones. Fixed points are re-verified with
/// certify at resolution 2 * grid_n and merged when within 1e-3 radians of
/// each other (in canonical form). Certificates are ordered by start index.
/// Throws PreconditionError when grid_n < 8.
NeSearchResult ne_search(const GameConstants& c, SourceKind kind,
                         const NeSearchOptions& options);

/// True when the correlation payoffs do not depend on the directions, i.e.
/// K = L = M = 0.
bool payoffs_constant(const GameConstants& c);

struct RegionSample {
  DirectionalProfile profile;
  SphericalAngles alice_angles;
  SphericalAngles bob_angles;
  CorrelationTriple triple{0.0, 0.0, 0.0};
  EpsilonSigma epsilon_sigma;
  PqPair pq;
  bool bell_holds = false;
};

struct RegionSummary {
  std::int64_t samples = 0;
  std::int64_t bell_holds = 0;
  double min_p = 0.0;
  double max_p = 0.0;
  double min_q = 0.0;
  double max_q = 0.0;
  // Smallest Euclidean distance from a mapped (p, q) to the origin.
  double min_distance_to_origin = 0.0;
  DirectionalProfile argmin_p;

  double bell_holds_fraction() const {
    return samples == 0 ? 0.0 : static_cast<double>(bell_holds) / static_cast<double>(samples);
  }
};

/// Evaluates pq_map over every (alpha, beta) pair of DirectionGrid(grid_n),
/// grid_n^4 samples in all. `sink`, when given, sees every sample in lattice
/// order (alpha index major). Throws PreconditionError when grid_n < 8.
RegionSummary region_scan(SourceKind kind, int grid_n,
                          const std::function<void(const RegionSample&)>& sink = {},
                          unsigned workers = 1);

/// Lattice profiles whose mapped (p, q) lies within `tol` of `target`,
/// clustered by single linkage over lattice adjacency (both directions equal
/// or adjacent on the lattice; the pole rows count as one point each). One
/// representative per cluster (closest to the target), ordered by first
/// lattice index.
std::vector<DirectionalProfile> directions_for_pq(SourceKind kind,
                                                  const MixedProfile& target,
                                                  int grid_n, double tol,
                                                  unsigned workers = 1);

struct DisappearanceRow {
  EquilibriumCertificate lhv;
  EquilibriumCertificate quantum;
  PqPair lhv_pq;
  PqPair quantum_pq;
  bool disappears = false;
};

struct PdDisappearanceReport {
  GameConstants constants;
  NashSet classical;
  std::vector<PayoffPair> classical_payoffs;
  NeSearchResult lhv_search;
  std::vector<DisappearanceRow> rows;
  int region_grid = 0;
  RegionSummary lhv_region;
  RegionSummary quantum_region;
  // Whether any lattice profile maps to within `tol` of (0, 0) under either
  // source. (0, 0) is outside the attainable set, q >= 1 / (2 sqrt 6).
  bool classical_ne_attainable = false;
  bool symmetric_reconstruction = false;
};

struct PdExperimentOptions {
  int grid_n = 32;
  double tol = 1e-4;
  std::uint64_t seed = 1;
  int region_grid = 24;
  unsigned workers = 1;
};

/// Classical Prisoners' Dilemma equilibrium, hidden-variable equilibrium
/// search, quantum re-certification of each hidden-variable equilibrium,
/// attainable-region summaries for both sources, and the symmetric
/// reconstruction check.
PdDisappearanceReport pd_disappearance_experiment(const PdExperimentOptions& options);

}  // namespace corrgame

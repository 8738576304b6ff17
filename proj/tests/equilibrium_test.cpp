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

#include "corrgame/equilibrium.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "corrgame/errors.hpp"
#include "oracles.hpp"

namespace corrgame {
namespace {

const GameConstants kPd{-1.0, -1.0, 4.0, 1.0};
const Direction kZ = Direction::z_axis();

Direction deg(double theta, double phi = 0.0) {
  return Direction::from_spherical_wrapped(degrees_to_radians(theta), degrees_to_radians(phi));
}

oracle::Vec vec(const Direction& d) { return {d.x(), d.y(), d.z()}; }

TEST(TripleOf, Examples) {
  CorrelationTriple t = triple_of(SourceKind::kQuantumCorrelated, {kZ, kZ});
  EXPECT_EQ(t.ab(), 1.0);
  EXPECT_EQ(t.ac(), 1.0);
  EXPECT_EQ(t.bc(), 1.0);
  t = triple_of(SourceKind::kQuantumCorrelated, {deg(120), deg(60)});
  EXPECT_NEAR(t.ab(), 0.5, 1e-15);
  EXPECT_NEAR(t.ac(), -0.5, 1e-15);
  EXPECT_NEAR(t.bc(), 0.5, 1e-15);
  t = triple_of(SourceKind::kLhvCorrelated, {deg(90), kZ});
  EXPECT_NEAR(t.ab(), 0.0, 1e-15);
  EXPECT_NEAR(t.ac(), 0.0, 1e-15);
  EXPECT_EQ(t.bc(), 1.0);
}

TEST(TripleOf, InvariantUnderCommonRotationAboutZ) {
  Rng rng(21);
  for (SourceKind kind : kAllSourceKinds) {
    for (int i = 0; i < 500; ++i) {
      const DirectionalProfile p{sample_uniform_direction(rng), sample_uniform_direction(rng)};
      const double angle = 2.0 * kPi * rng.uniform();
      const DirectionalProfile r{p.alpha.rotated_about_z(angle), p.beta.rotated_about_z(angle)};
      const PayoffPair a = directional_payoffs(kPd, kind, p);
      const PayoffPair b = directional_payoffs(kPd, kind, r);
      EXPECT_NEAR(a.alice, b.alice, 1e-12);
      EXPECT_NEAR(a.bob, b.bob, 1e-12);
      const DirectionalProfile c = canonical_profile(p);
      EXPECT_NEAR(directional_payoffs(kPd, kind, c).alice, a.alice, 1e-12);
      EXPECT_LT(profile_distance(canonical_profile(r), c), 1e-9);
    }
  }
}

TEST(DirectionGrid, LatticeLayout) {
  const DirectionGrid g(8);
  EXPECT_EQ(g.size(), 64);
  EXPECT_EQ(g[0], kZ);
  EXPECT_EQ(g[63].z(), -1.0);
  EXPECT_THROW(DirectionGrid(7), PreconditionError);
}

TEST(BestResponse, AliceAgainstZ) {
  const BestResponse br = best_response(kPd, SourceKind::kQuantumCorrelated, kZ, Player::kAlice, 32);
  // Oracle: with beta = z the payoff is 4 q + 1, q = sqrt((4 + 2 cos^2) / 6).
  const double dense = oracle::dense_sphere_max(
      [](const oracle::Vec& a) {
        return oracle::payoffs(-1, -1, 4, 1, oracle::triple(true, false, a, {0, 0, 1})).first;
      },
      1.0);
  EXPECT_NEAR(dense, 5.0, 1e-12);
  EXPECT_NEAR(br.payoff, 5.0, 1e-9);
  EXPECT_GE(br.payoff, br.grid_payoff);
  EXPECT_GT(std::abs(br.direction.z()), 1.0 - 1e-6);
}

TEST(BestResponse, BobAgainstZ) {
  const BestResponse br = best_response(kPd, SourceKind::kQuantumCorrelated, kZ, Player::kBob, 32);
  const double dense = oracle::dense_sphere_max(
      [](const oracle::Vec& b) {
        return oracle::payoffs(-1, -1, 4, 1, oracle::triple(true, false, {0, 0, 1}, b)).second;
      },
      1.0);
  const double exact = 1.0 - std::sqrt(1.0 / 3.0);
  EXPECT_NEAR(dense, exact, 1e-12);
  EXPECT_NEAR(br.payoff, exact, 1e-9);
  EXPECT_NEAR(exact, 0.422650, 1e-6);
  EXPECT_LT(angle_between(br.direction, -kZ), 1e-4);
}

TEST(BestResponse, ConstantGame) {
  for (SourceKind kind : kAllSourceKinds) {
    const BestResponse br = best_response({0, 0, 0, 2.5}, kind, deg(33, 44), Player::kBob, 8);
    EXPECT_EQ(br.payoff, 2.5);
  }
}

// Refinement never loses to the lattice, and off-lattice optima are reached
// more closely than the lattice allows.
TEST(BestResponse, RefinementBeatsDenseOracleOnRandomFixedDirections) {
  Rng rng(5);
  for (int i = 0; i < 6; ++i) {
    const Direction fixed = sample_uniform_direction(rng);
    const BestResponse br = best_response(kPd, SourceKind::kQuantumCorrelated, fixed, Player::kAlice, 24);
    EXPECT_GE(br.payoff, br.grid_payoff);
    const double dense = oracle::dense_sphere_max(
        [&](const oracle::Vec& a) {
          return oracle::payoffs(-1, -1, 4, 1, oracle::triple(true, false, a, vec(fixed))).first;
        },
        2.0);
    EXPECT_GE(br.payoff, dense - 1e-9);
  }
}

TEST(Certify, ConstantGameAlwaysCertifies) {
  const EquilibriumCertificate c =
      certify({0, 0, 0, 1}, SourceKind::kLhvCorrelated, {deg(10), deg(20)}, 16, 1e-4);
  EXPECT_EQ(c.alice_improvement, 0.0);
  EXPECT_EQ(c.bob_improvement, 0.0);
  EXPECT_TRUE(c.valid());
}

TEST(Certify, BothAlongZIsNotAnEquilibrium) {
  const EquilibriumCertificate c =
      certify(kPd, SourceKind::kQuantumCorrelated, {kZ, kZ}, 32, 1e-4);
  EXPECT_NEAR(c.payoffs.bob, 0.0, 1e-12);
  EXPECT_GE(c.bob_improvement, 0.42);
  EXPECT_FALSE(c.valid());
}

TEST(Certify, ConsistentWithBestResponse) {
  Rng rng(6);
  for (SourceKind kind : {SourceKind::kQuantumCorrelated, SourceKind::kLhvCorrelated}) {
    for (int i = 0; i < 5; ++i) {
      const DirectionalProfile p{sample_uniform_direction(rng), sample_uniform_direction(rng)};
      const EquilibriumCertificate c = certify(kPd, kind, p, 16, 1e-4);
      const PayoffPair now = directional_payoffs(kPd, kind, p);
      const double a = best_response(kPd, kind, p.beta, Player::kAlice, 16).payoff;
      const double b = best_response(kPd, kind, p.alpha, Player::kBob, 16).payoff;
      EXPECT_NEAR(c.alice_improvement, std::max(0.0, a - now.alice), 1e-9);
      EXPECT_NEAR(c.bob_improvement, std::max(0.0, b - now.bob), 1e-9);
    }
  }
}

TEST(NeSearch, ConstantGameFlagsAllProfiles) {
  const NeSearchResult r = ne_search({0, 0, 0, 3}, SourceKind::kQuantumCorrelated, {});
  EXPECT_TRUE(r.all_profiles);
  EXPECT_TRUE(r.certificates.empty());
}

TEST(NeSearch, RejectsCoarseGrid) {
  NeSearchOptions o;
  o.grid_n = 4;
  EXPECT_THROW(ne_search(kPd, SourceKind::kQuantumCorrelated, o), PreconditionError);
}

TEST(NeSearch, HiddenVariableCertificatesSelfVerify) {
  NeSearchOptions o;
  o.grid_n = 24;
  o.tol = 1e-4;
  const NeSearchResult r = ne_search(kPd, SourceKind::kLhvCorrelated, o);
  ASSERT_FALSE(r.certificates.empty());
  EXPECT_EQ(r.starts.size(), 9u + static_cast<std::size_t>(o.random_starts));
  for (const auto& c : r.certificates) {
    EXPECT_EQ(c.verified_grid_resolution, 48);
    EXPECT_TRUE(c.valid());
    EXPECT_TRUE(certify(kPd, SourceKind::kLhvCorrelated, c.profile, o.grid_n, o.tol).valid());
  }
  // Certificates are pairwise distinct up to the z-rotation symmetry.
  for (std::size_t i = 0; i < r.certificates.size(); ++i) {
    for (std::size_t j = i + 1; j < r.certificates.size(); ++j) {
      EXPECT_GT(profile_distance(canonical_profile(r.certificates[i].profile),
                                 canonical_profile(r.certificates[j].profile)),
                1e-3);
    }
  }
}

TEST(NeSearch, QuantumCertificatesSurviveFinerGrid) {
  NeSearchOptions o;
  o.grid_n = 16;
  o.tol = 1e-4;
  const NeSearchResult r = ne_search(kPd, SourceKind::kQuantumCorrelated, o);
  for (const auto& c : r.certificates) {
    const EquilibriumCertificate fine =
        certify(kPd, SourceKind::kQuantumCorrelated, c.profile, 4 * o.grid_n, o.tol);
    EXPECT_LE(fine.alice_improvement, 2 * o.tol);
    EXPECT_LE(fine.bob_improvement, 2 * o.tol);
  }
}

TEST(NeSearch, IndependentOfWorkerCount) {
  NeSearchOptions o;
  o.grid_n = 16;
  const NeSearchResult one = ne_search(kPd, SourceKind::kQuantumCorrelated, o);
  o.workers = 3;
  const NeSearchResult three = ne_search(kPd, SourceKind::kQuantumCorrelated, o);
  ASSERT_EQ(one.certificates.size(), three.certificates.size());
  for (std::size_t i = 0; i < one.certificates.size(); ++i) {
    EXPECT_EQ(one.certificates[i].profile.alpha, three.certificates[i].profile.alpha);
    EXPECT_EQ(one.certificates[i].profile.beta, three.certificates[i].profile.beta);
  }
}

TEST(RegionScan, HiddenVariableStaysClassical) {
  const RegionSummary s = region_scan(SourceKind::kLhvCorrelated, 12);
  EXPECT_EQ(s.samples, 12 * 12 * 12 * 12);
  EXPECT_GE(s.min_p, -1e-12);
  EXPECT_LE(s.max_p, 1.0 + 1e-12);
  EXPECT_GE(s.min_q, 1.0 / (2.0 * std::sqrt(6.0)) - 1e-12);
  EXPECT_LE(s.max_q, 1.0 + 1e-12);
}

TEST(RegionScan, QuantumHasViolationRegion) {
  const RegionSummary s = region_scan(SourceKind::kQuantumCorrelated, 13);
  EXPECT_LT(s.min_p, 0.0);
  EXPECT_LT(s.bell_holds_fraction(), 1.0);
  EXPECT_LT(pq_map(triple_of(SourceKind::kQuantumCorrelated, s.argmin_p)).p, 0.0);
}

TEST(RegionScan, QLowerBoundForEveryKind) {
  for (SourceKind kind : kAllSourceKinds) {
    EXPECT_GE(region_scan(kind, 10).min_q, 1.0 / (2.0 * std::sqrt(6.0)) - 1e-12);
  }
}

TEST(RegionScan, SinkSeesEveryRowInOrderAndWorkersAgree) {
  std::vector<double> seen;
  const RegionSummary s = region_scan(
      SourceKind::kQuantumCorrelated, 9,
      [&](const RegionSample& r) { seen.push_back(r.pq.p); }, 3);
  ASSERT_EQ(static_cast<std::int64_t>(seen.size()), s.samples);
  std::vector<double> serial;
  const RegionSummary t = region_scan(
      SourceKind::kQuantumCorrelated, 9, [&](const RegionSample& r) { serial.push_back(r.pq.p); });
  EXPECT_EQ(seen, serial);
  EXPECT_EQ(s.min_p, t.min_p);
  EXPECT_EQ(s.bell_holds, t.bell_holds);
  const RegionSummary u = region_scan(SourceKind::kQuantumCorrelated, 9, {}, 4);
  EXPECT_EQ(u.min_p, t.min_p);
  EXPECT_EQ(u.argmin_p.alpha, t.argmin_p.alpha);
  EXPECT_EQ(u.argmin_p.beta, t.argmin_p.beta);
}

TEST(DirectionsForPq, PerfectCorrelationCorner) {
  const auto found =
      directions_for_pq(SourceKind::kQuantumCorrelated, MixedProfile(0.0, 1.0), 16, 1e-6);
  bool has_zz = false;
  for (const auto& p : found) {
    if (angle_between(p.alpha, kZ) < 1e-12 && angle_between(p.beta, kZ) < 1e-12) has_zz = true;
  }
  EXPECT_TRUE(has_zz);
}

TEST(DirectionsForPq, OriginUnattainable) {
  for (SourceKind kind : kAllSourceKinds) {
    EXPECT_TRUE(directions_for_pq(kind, MixedProfile(0.0, 0.0), 12, 0.1).empty());
  }
}

// With 23 points per axis both the equator (alpha perpendicular to z, beta = z)
// and a polar angle within 0.1 degree of arccos(sqrt 2 - 1) (alpha = +-z) lie
// on the lattice, and all three families map to (0, sqrt(2/3)).
TEST(DirectionsForPq, SeveralClustersForOneTarget) {
  const MixedProfile target(0.0, std::sqrt(2.0 / 3.0));
  const auto found = directions_for_pq(SourceKind::kQuantumCorrelated, target, 23, 1e-3);
  EXPECT_GE(found.size(), 3u);
  for (const auto& p : found) {
    const PqPair pq = pq_map(triple_of(SourceKind::kQuantumCorrelated, p));
    EXPECT_LE(std::hypot(pq.p - target.p(), pq.q - target.q()), 1e-3);
  }
}

TEST(PdExperiment, ReportsClassicalQuantumAndReconstructionStages) {
  PdExperimentOptions o;
  o.grid_n = 16;
  o.region_grid = 12;
  const PdDisappearanceReport r = pd_disappearance_experiment(o);
  ASSERT_EQ(r.classical.points.size(), 1u);
  EXPECT_EQ(r.classical.points[0], MixedProfile(0.0, 0.0));
  EXPECT_EQ(r.classical_payoffs[0].alice, 1.0);
  EXPECT_EQ(r.classical_payoffs[0].bob, 1.0);
  EXPECT_LT(r.quantum_region.min_p, 0.0);
  EXPECT_GE(r.lhv_region.min_p, -1e-12);
  EXPECT_FALSE(r.classical_ne_attainable);
  EXPECT_FALSE(r.symmetric_reconstruction);
  EXPECT_EQ(r.rows.size(), r.lhv_search.certificates.size());
  for (const auto& row : r.rows) {
    EXPECT_TRUE(row.lhv.valid());
    EXPECT_EQ(row.disappears, !row.quantum.valid());
  }
}

}  // namespace
}  // namespace corrgame

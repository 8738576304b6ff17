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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "corrgame/errors.hpp"
#include "parallel.hpp"

namespace corrgame {

CorrelationTriple triple_of(SourceKind kind, const DirectionalProfile& profile) {
  const Direction z = Direction::z_axis();
  return {analytic_correlation(kind, profile.alpha, profile.beta),
          analytic_correlation(kind, profile.alpha, z),
          analytic_correlation(kind, z, profile.beta)};
}

PayoffPair directional_payoffs(const GameConstants& c, SourceKind kind,
                               const DirectionalProfile& profile) {
  return correlation_payoffs(c, triple_of(kind, profile));
}

double profile_distance(const DirectionalProfile& a, const DirectionalProfile& b) {
  return std::max(angle_between(a.alpha, b.alpha), angle_between(a.beta, b.beta));
}

namespace {

constexpr double kPoleEpsilon = 1e-9;

bool on_z_axis(const Direction& d) { return std::hypot(d.x(), d.y()) < kPoleEpsilon; }

}  // namespace

DirectionalProfile canonical_profile(const DirectionalProfile& profile) {
  DirectionalProfile out = profile;
  const Direction& pivot = on_z_axis(profile.alpha) ? profile.beta : profile.alpha;
  if (!on_z_axis(pivot)) {
    const double phi = std::atan2(pivot.y(), pivot.x());
    out.alpha = out.alpha.rotated_about_z(-phi);
    out.beta = out.beta.rotated_about_z(-phi);
  }
  if (out.beta.y() < 0.0) {
    out.alpha = out.alpha.mirrored_y();
    out.beta = out.beta.mirrored_y();
  }
  return out;
}

DirectionGrid::DirectionGrid(int n) : n_(n) {
  if (n < 8) {
    throw PreconditionError("grid resolution must be at least 8, got " + std::to_string(n));
  }
  directions_.reserve(static_cast<std::size_t>(size()));
  for (std::int64_t k = 0; k < size(); ++k) {
    directions_.push_back(Direction::from_spherical(angles(k)));
  }
}

SphericalAngles DirectionGrid::angles(std::int64_t k) const {
  const auto i = k / n_;
  const auto j = k % n_;
  const double theta = i == n_ - 1 ? kPi : static_cast<double>(i) * kPi / (n_ - 1);
  return {theta, 2.0 * kPi * static_cast<double>(j) / n_};
}

double DirectionGrid::max_step() const {
  return std::max(kPi / (n_ - 1), 2.0 * kPi / n_);
}

namespace {

struct Vec3 {
  double x, y, z;
};

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Vec3 unit(const Vec3& v) {
  const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
  return {v.x / n, v.y / n, v.z / n};
}

// Orthonormal basis of the tangent plane at d.
std::pair<Vec3, Vec3> tangent_basis(const Direction& d) {
  const Vec3 v{d.x(), d.y(), d.z()};
  const Vec3 helper = std::abs(v.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  const Vec3 e1 = unit(cross(v, helper));
  return {e1, cross(v, e1)};
}

class ResponderObjective {
 public:
  ResponderObjective(const GameConstants& c, SourceKind kind, const Direction& fixed,
                     Player who)
      : c_(c), kind_(kind), fixed_(fixed), who_(who) {}

  double operator()(const Direction& own) const {
    if (who_ == Player::kAlice) {
      return directional_payoffs(c_, kind_, {own, fixed_}).alice;
    }
    return directional_payoffs(c_, kind_, {fixed_, own}).bob;
  }

 private:
  GameConstants c_;
  SourceKind kind_;
  Direction fixed_;
  Player who_;
};

// Compass search on the sphere: eight moves in the tangent plane, step
// halved when no move gains at least refine_tol.
std::pair<Direction, double> refine(const ResponderObjective& f, Direction d, double value,
                                    double step, double refine_tol) {
  constexpr double kMinStep = 1e-10;
  constexpr int kMaxIterations = 20000;
  for (int it = 0; it < kMaxIterations && step > kMinStep; ++it) {
    const auto [e1, e2] = tangent_basis(d);
    Direction best_dir = d;
    double best = value;
    for (int k = 0; k < 8; ++k) {
      const double a = k * kPi / 4.0;
      const double u = step * std::cos(a);
      const double w = step * std::sin(a);
      const Direction cand = Direction::from_components(
          d.x() + u * e1.x + w * e2.x, d.y() + u * e1.y + w * e2.y,
          d.z() + u * e1.z + w * e2.z);
      const double fc = f(cand);
      if (fc > best) {
        best = fc;
        best_dir = cand;
      }
    }
    const double gain = best - value;
    if (gain > 0.0) {
      d = best_dir;
      value = best;
    }
    if (gain < refine_tol) step *= 0.5;
  }
  return {d, value};
}

}  // namespace

BestResponse best_response(const GameConstants& c, SourceKind kind,
                           const Direction& fixed, Player who, int grid_n,
                           double refine_tol) {
  validate(c);
  const DirectionGrid grid(grid_n);
  const ResponderObjective f(c, kind, fixed, who);

  std::vector<double> values(static_cast<std::size_t>(grid.size()));
  for (std::int64_t k = 0; k < grid.size(); ++k) {
    values[static_cast<std::size_t>(k)] = f(grid[k]);
  }
  // Refine from the few best cells so a basin whose lattice value is a hair
  // lower is not missed.
  constexpr std::size_t kSeeds = 4;
  std::vector<std::int64_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t n_seeds = std::min(kSeeds, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_seeds),
                    order.end(), [&](std::int64_t a, std::int64_t b) {
                      const double va = values[static_cast<std::size_t>(a)];
                      const double vb = values[static_cast<std::size_t>(b)];
                      return va != vb ? va > vb : a < b;
                    });

  BestResponse out;
  out.grid_payoff = values[static_cast<std::size_t>(order[0])];
  out.direction = grid[order[0]];
  out.payoff = out.grid_payoff;
  for (std::size_t s = 0; s < n_seeds; ++s) {
    const std::int64_t k = order[s];
    const auto [dir, value] = refine(f, grid[k], values[static_cast<std::size_t>(k)],
                                     0.5 * grid.max_step(), refine_tol);
    if (value > out.payoff) {
      out.payoff = value;
      out.direction = dir;
    }
  }
  return out;
}

EquilibriumCertificate certify(const GameConstants& c, SourceKind kind,
                               const DirectionalProfile& profile, int grid_n,
                               double tol) {
  EquilibriumCertificate cert;
  cert.profile = profile;
  cert.payoffs = directional_payoffs(c, kind, profile);
  cert.tolerance = tol;
  cert.verified_grid_resolution = grid_n;
  if (payoffs_constant(c)) return cert;
  const BestResponse alice = best_response(c, kind, profile.beta, Player::kAlice, grid_n);
  const BestResponse bob = best_response(c, kind, profile.alpha, Player::kBob, grid_n);
  cert.alice_improvement = std::max(0.0, alice.payoff - cert.payoffs.alice);
  cert.bob_improvement = std::max(0.0, bob.payoff - cert.payoffs.bob);
  return cert;
}

bool payoffs_constant(const GameConstants& c) {
  return c.K == 0.0 && c.L == 0.0 && c.M == 0.0;
}

namespace {

constexpr double kMergeDistance = 1e-3;

std::vector<DirectionalProfile> starting_profiles(const NeSearchOptions& options) {
  const Direction z = Direction::z_axis();
  const Direction x = Direction::from_components(1.0, 0.0, 0.0);
  const std::array<Direction, 3> axes = {z, x, -z};
  std::vector<DirectionalProfile> starts;
  for (const Direction& a : axes) {
    for (const Direction& b : axes) starts.push_back({a, b});
  }
  for (int i = 0; i < options.random_starts; ++i) {
    Rng rng(derive_stream_seed(options.seed, static_cast<std::uint64_t>(i)));
    const Direction a = sample_uniform_direction(rng);
    const Direction b = sample_uniform_direction(rng);
    starts.push_back({a, b});
  }
  return starts;
}

struct StartRun {
  StartOutcome outcome;
  std::optional<EquilibriumCertificate> certificate;
};

StartRun run_start(const GameConstants& c, SourceKind kind, const NeSearchOptions& options,
                   const DirectionalProfile& start) {
  StartRun run;
  run.outcome.start = start;
  DirectionalProfile profile = canonical_profile(start);
  const double move_threshold = 0.5 * options.tol;
  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    run.outcome.sweeps = sweep;
    bool moved = false;
    PayoffPair current = directional_payoffs(c, kind, profile);
    const BestResponse alice =
        best_response(c, kind, profile.beta, Player::kAlice, options.grid_n);
    if (alice.payoff - current.alice > move_threshold) {
      profile.alpha = alice.direction;
      moved = true;
      current = directional_payoffs(c, kind, profile);
    }
    const BestResponse bob =
        best_response(c, kind, profile.alpha, Player::kBob, options.grid_n);
    if (bob.payoff - current.bob > move_threshold) {
      profile.beta = bob.direction;
      moved = true;
    }
    profile = canonical_profile(profile);
    if (!moved) {
      run.outcome.converged = true;
      break;
    }
  }
  if (!run.outcome.converged) return run;

  EquilibriumCertificate cert = certify(c, kind, profile, 2 * options.grid_n, options.tol);
  if (cert.valid()) {
    run.certificate = cert;
  } else {
    run.outcome.rejected_on_verification = true;
  }
  return run;
}

}  // namespace

NeSearchResult ne_search(const GameConstants& c, SourceKind kind,
                         const NeSearchOptions& options) {
  validate(c);
  if (options.grid_n < 8) {
    throw PreconditionError("grid resolution must be at least 8, got " +
                            std::to_string(options.grid_n));
  }
  NeSearchResult result;
  if (payoffs_constant(c)) {
    result.all_profiles = true;
    return result;
  }

  const std::vector<DirectionalProfile> starts = starting_profiles(options);
  std::vector<StartRun> runs(starts.size());
  detail::for_each_index(static_cast<std::int64_t>(starts.size()), options.workers,
                         [&](std::int64_t i) {
                           const auto idx = static_cast<std::size_t>(i);
                           runs[idx] = run_start(c, kind, options, starts[idx]);
                         });

  for (const StartRun& run : runs) {
    result.starts.push_back(run.outcome);
    if (!run.certificate) continue;
    const DirectionalProfile canon = canonical_profile(run.certificate->profile);
    const bool duplicate = std::any_of(
        result.certificates.begin(), result.certificates.end(),
        [&](const EquilibriumCertificate& seen) {
          return profile_distance(canonical_profile(seen.profile), canon) <= kMergeDistance;
        });
    if (!duplicate) result.certificates.push_back(*run.certificate);
  }
  return result;
}

namespace {

RegionSample make_sample(SourceKind kind, const DirectionGrid& grid, std::int64_t ka,
                         std::int64_t kb) {
  RegionSample s;
  s.profile = {grid[ka], grid[kb]};
  s.alice_angles = grid.angles(ka);
  s.bob_angles = grid.angles(kb);
  s.triple = triple_of(kind, s.profile);
  s.epsilon_sigma = epsilon_sigma(s.triple);
  s.pq = pq_map(s.epsilon_sigma);
  s.bell_holds = bell_check(s.triple).holds;
  return s;
}

void accumulate(RegionSummary& summary, const RegionSample& s) {
  const double dist = std::hypot(s.pq.p, s.pq.q);
  if (summary.samples == 0) {
    summary.min_p = summary.max_p = s.pq.p;
    summary.min_q = summary.max_q = s.pq.q;
    summary.min_distance_to_origin = dist;
    summary.argmin_p = s.profile;
  } else {
    if (s.pq.p < summary.min_p) {
      summary.min_p = s.pq.p;
      summary.argmin_p = s.profile;
    }
    summary.max_p = std::max(summary.max_p, s.pq.p);
    summary.min_q = std::min(summary.min_q, s.pq.q);
    summary.max_q = std::max(summary.max_q, s.pq.q);
    summary.min_distance_to_origin = std::min(summary.min_distance_to_origin, dist);
  }
  ++summary.samples;
  if (s.bell_holds) ++summary.bell_holds;
}

// Merges `part` (later in lattice order) into `into`. Strict comparisons keep
// the earliest argmin.
void merge(RegionSummary& into, const RegionSummary& part) {
  if (part.samples == 0) return;
  if (into.samples == 0) {
    into = part;
    return;
  }
  if (part.min_p < into.min_p) {
    into.min_p = part.min_p;
    into.argmin_p = part.argmin_p;
  }
  into.max_p = std::max(into.max_p, part.max_p);
  into.min_q = std::min(into.min_q, part.min_q);
  into.max_q = std::max(into.max_q, part.max_q);
  into.min_distance_to_origin =
      std::min(into.min_distance_to_origin, part.min_distance_to_origin);
  into.samples += part.samples;
  into.bell_holds += part.bell_holds;
}

constexpr std::int64_t kSinkBatch = 64;

}  // namespace

RegionSummary region_scan(SourceKind kind, int grid_n,
                          const std::function<void(const RegionSample&)>& sink,
                          unsigned workers) {
  const DirectionGrid grid(grid_n);
  const std::int64_t units = grid.size();
  RegionSummary total;

  if (!sink) {
    std::vector<RegionSummary> partial(static_cast<std::size_t>(units));
    detail::for_each_index(units, workers, [&](std::int64_t ka) {
      RegionSummary& part = partial[static_cast<std::size_t>(ka)];
      for (std::int64_t kb = 0; kb < units; ++kb) {
        accumulate(part, make_sample(kind, grid, ka, kb));
      }
    });
    for (const auto& part : partial) merge(total, part);
    return total;
  }

  for (std::int64_t first = 0; first < units; first += kSinkBatch) {
    const std::int64_t batch = std::min(kSinkBatch, units - first);
    std::vector<std::vector<RegionSample>> rows(static_cast<std::size_t>(batch));
    detail::for_each_index(batch, workers, [&](std::int64_t b) {
      auto& row = rows[static_cast<std::size_t>(b)];
      row.reserve(static_cast<std::size_t>(units));
      for (std::int64_t kb = 0; kb < units; ++kb) {
        row.push_back(make_sample(kind, grid, first + b, kb));
      }
    });
    for (const auto& row : rows) {
      for (const RegionSample& s : row) {
        accumulate(total, s);
        sink(s);
      }
    }
  }
  return total;
}

namespace {

// Lattice index with the pole rows collapsed onto j = 0.
std::int64_t collapse_pole(std::int64_t i, std::int64_t j, std::int64_t n) {
  if (i == 0 || i == n - 1) j = 0;
  return i * n + j;
}

std::vector<std::int64_t> lattice_neighbours(std::int64_t k, std::int64_t n) {
  const std::int64_t i = k / n;
  const std::int64_t j = k % n;
  std::vector<std::int64_t> out;
  if (i == 0 || i == n - 1) {
    out.push_back(collapse_pole(i, 0, n));
    const std::int64_t ring = i == 0 ? 1 : n - 2;
    for (std::int64_t jj = 0; jj < n; ++jj) out.push_back(collapse_pole(ring, jj, n));
    return out;
  }
  for (std::int64_t di = -1; di <= 1; ++di) {
    for (std::int64_t dj = -1; dj <= 1; ++dj) {
      out.push_back(collapse_pole(i + di, (j + dj + n) % n, n));
    }
  }
  return out;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

struct Match {
  std::int64_t key;  // collapsed alpha index * n^2 + collapsed beta index
  double distance;
};

}  // namespace

std::vector<DirectionalProfile> directions_for_pq(SourceKind kind,
                                                  const MixedProfile& target,
                                                  int grid_n, double tol,
                                                  unsigned workers) {
  const DirectionGrid grid(grid_n);
  const std::int64_t n = grid_n;
  const std::int64_t units = grid.size();

  std::vector<std::vector<Match>> per_unit(static_cast<std::size_t>(units));
  detail::for_each_index(units, workers, [&](std::int64_t ka) {
    if (collapse_pole(ka / n, ka % n, n) != ka) return;
    for (std::int64_t kb = 0; kb < units; ++kb) {
      if (collapse_pole(kb / n, kb % n, n) != kb) continue;
      const PqPair pq = pq_map(triple_of(kind, {grid[ka], grid[kb]}));
      const double d = std::hypot(pq.p - target.p(), pq.q - target.q());
      if (d <= tol) per_unit[static_cast<std::size_t>(ka)].push_back({ka * units + kb, d});
    }
  });

  std::vector<Match> matches;
  for (const auto& unit_matches : per_unit) {
    matches.insert(matches.end(), unit_matches.begin(), unit_matches.end());
  }
  std::unordered_map<std::int64_t, std::size_t> index_of;
  for (std::size_t m = 0; m < matches.size(); ++m) index_of.emplace(matches[m].key, m);

  std::vector<std::size_t> parent(matches.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t m = 0; m < matches.size(); ++m) {
    const std::int64_t ka = matches[m].key / units;
    const std::int64_t kb = matches[m].key % units;
    for (std::int64_t na : lattice_neighbours(ka, n)) {
      for (std::int64_t nb : lattice_neighbours(kb, n)) {
        const auto it = index_of.find(na * units + nb);
        if (it == index_of.end()) continue;
        const std::size_t a = find_root(parent, m);
        const std::size_t b = find_root(parent, it->second);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  // Roots are the smallest member index, so iterating matches in lattice
  // order visits clusters in order of first member.
  std::vector<std::size_t> best_of_root(matches.size(), matches.size());
  std::vector<std::size_t> roots;
  for (std::size_t m = 0; m < matches.size(); ++m) {
    const std::size_t r = find_root(parent, m);
    std::size_t& best = best_of_root[r];
    if (best == matches.size()) {
      roots.push_back(r);
      best = m;
    } else if (matches[m].distance < matches[best].distance) {
      best = m;
    }
  }
  std::vector<DirectionalProfile> out;
  out.reserve(roots.size());
  for (std::size_t r : roots) {
    const Match& m = matches[best_of_root[r]];
    out.push_back({grid[m.key / units], grid[m.key % units]});
  }
  return out;
}

PdDisappearanceReport pd_disappearance_experiment(const PdExperimentOptions& options) {
  PdDisappearanceReport report;
  report.constants = to_constants(prisoners_dilemma());
  const GameConstants& c = report.constants;

  report.classical = classical_nash(c);
  for (const MixedProfile& point : report.classical.points) {
    report.classical_payoffs.push_back(classical_payoffs(c, point));
  }

  NeSearchOptions search;
  search.grid_n = options.grid_n;
  search.tol = options.tol;
  search.seed = options.seed;
  search.workers = options.workers;
  report.lhv_search = ne_search(c, SourceKind::kLhvCorrelated, search);

  for (const EquilibriumCertificate& lhv : report.lhv_search.certificates) {
    DisappearanceRow row;
    row.lhv = lhv;
    row.quantum = certify(c, SourceKind::kQuantumCorrelated, lhv.profile,
                          lhv.verified_grid_resolution, options.tol);
    row.lhv_pq = pq_map(triple_of(SourceKind::kLhvCorrelated, lhv.profile));
    row.quantum_pq = pq_map(triple_of(SourceKind::kQuantumCorrelated, lhv.profile));
    row.disappears = !row.quantum.valid();
    report.rows.push_back(row);
  }

  report.region_grid = options.region_grid;
  report.lhv_region =
      region_scan(SourceKind::kLhvCorrelated, options.region_grid, {}, options.workers);
  report.quantum_region =
      region_scan(SourceKind::kQuantumCorrelated, options.region_grid, {}, options.workers);
  report.classical_ne_attainable =
      std::min(report.lhv_region.min_distance_to_origin,
               report.quantum_region.min_distance_to_origin) <= options.tol;
  report.symmetric_reconstruction = symmetric_reconstruction_possible(c);
  return report;
}

}  // namespace corrgame

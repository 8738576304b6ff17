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

#include <string>
#include <utility>
#include <vector>

namespace corrgame {

/// Symmetric 2x2 bi-matrix game. Alice's payoffs, rows are her strategies
/// S1, S2 and columns Bob's:
///
///            S1       S2
///     S1   (r, r)   (s, t)
///     S2   (t, s)   (u, u)
struct BiMatrixGame {
  double r = 0.0;
  double s = 0.0;
  double t = 0.0;
  double u = 0.0;
};

/// Coefficients of the bilinear mixed-strategy payoffs
///   P_A(p, q) = K p q + L p + M q + N
///   P_B(p, q) = K p q + M p + L q + N
struct GameConstants {
  double K = 0.0;
  double L = 0.0;
  double M = 0.0;
  double N = 0.0;

  friend bool operator==(const GameConstants&, const GameConstants&) = default;
};

/// Probabilities of playing the first strategy, each in [0, 1].
class MixedProfile {
 public:
  /// Throws PreconditionError when p or q is outside [0, 1].
  MixedProfile(double p, double q);

  double p() const { return p_; }
  double q() const { return q_; }

  friend bool operator==(const MixedProfile&, const MixedProfile&) = default;

 private:
  double p_;
  double q_;
};

struct PayoffPair {
  double alice = 0.0;
  double bob = 0.0;
};

/// The Prisoners' Dilemma with C as the first strategy: (3, 0, 5, 1).
BiMatrixGame prisoners_dilemma();

/// Throws PreconditionError for non-finite entries.
void validate(const BiMatrixGame& game);
void validate(const GameConstants& constants);

/// K = r - s - t + u, L = s - u, M = t - u, N = u.
GameConstants to_constants(const BiMatrixGame& game);

/// The bilinear form at arbitrary real (p, q). Used with p outside [0, 1] by
/// the correlation payoffs.
PayoffPair bilinear_payoffs(const GameConstants& c, double p, double q);

PayoffPair classical_payoffs(const GameConstants& c, const MixedProfile& profile);

/// Closed segment of equilibria from `from` to `to` (axis-aligned).
struct ProfileSegment {
  MixedProfile from;
  MixedProfile to;
};

/// Equilibrium set of a 2x2 symmetric game. Isolated points and segments are
/// disjoint; `all_profiles` is set instead of enumerating the unit square.
struct NashSet {
  bool all_profiles = false;
  std::vector<MixedProfile> points;
  std::vector<ProfileSegment> segments;
};

/// All (p*, q*) with P_A(p*, q*) >= P_A(p, q*) and P_B(p*, q*) >= P_B(p*, q).
///
/// Exact: intersects the two best-response correspondences, each a union of
/// axis-aligned segments. Profiles on best-response boundaries are included.
NashSet classical_nash(const GameConstants& c);

/// Largest unilateral gain available at `profile`, max over both players.
/// Evaluated exactly from the sign of the payoff slope (the payoffs are linear
/// in the deviating player's own probability).
double max_unilateral_gain(const GameConstants& c, const MixedProfile& profile);

/// Left-hand sides (p* - p)(1 + q*) and (q* - q)(1 + p*) of the Prisoners'
/// Dilemma equilibrium inequalities; both <= 0 for every (p, q) iff
/// (p*, q*) = (0, 0).
std::pair<double, double> pd_nash_inequalities(const MixedProfile& star,
                                               const MixedProfile& profile);

/// Reads a game file. Accepted JSON documents:
///   {"r": 3, "s": 0, "t": 5, "u": 1}
///   {"table": [[[3, 3], [0, 5]], [[5, 0], [1, 1]]]}
/// where table[i][j] = [alice, bob] for Alice row i, Bob column j. Tables
/// whose Bob entry (i, j) differs from Alice entry (j, i) are rejected.
/// Throws PreconditionError on I/O, parse or symmetry errors.
BiMatrixGame load_game_file(const std::string& path);
BiMatrixGame parse_game_text(const std::string& text);

}  // namespace corrgame

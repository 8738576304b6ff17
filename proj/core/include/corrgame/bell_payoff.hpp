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

#include <numbers>

#include "corrgame/correlation_sources.hpp"
#include "corrgame/game_model.hpp"

namespace corrgame {

inline constexpr double kSqrt6 = 2.449489742783178098197284;

/// Correlations <ab>, <ac>, <bc> of outcomes along (alpha, beta),
/// (alpha, z) and (z, beta).
class CorrelationTriple {
 public:
  /// Throws PreconditionError for components outside [-1, 1].
  CorrelationTriple(double ab, double ac, double bc);

  /// Clamps each estimate into [-1, 1]. Standard errors are dropped.
  static CorrelationTriple from_estimate(const EstimatedTriple& e);

  double ab() const { return ab_; }
  double ac() const { return ac_; }
  double bc() const { return bc_; }

 private:
  double ab_;
  double ac_;
  double bc_;
};

/// epsilon = sqrt(3 + bc^2 + 2 ab ac), sigma = sqrt(2 (1 + bc) + ab^2 + ac^2).
/// Over the cube of admissible triples, 1 <= epsilon <= sqrt 6 and
/// 0 <= sigma <= sqrt 6, and epsilon^2 - sigma^2 = (1 - bc)^2 - (ab - ac)^2.
struct EpsilonSigma {
  double epsilon = 0.0;
  double sigma = 0.0;
};

EpsilonSigma epsilon_sigma(const CorrelationTriple& t);

enum class BellConvention {
  kMainText,        // |ab - ac| <= 1 - bc
  kAnticorrelated,  // |ab - ac| <= 1 + bc
};

struct BellCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Boundary band: holds iff lhs <= rhs + kBellTolerance.
inline constexpr double kBellTolerance = 1e-12;

BellCheck bell_check(const CorrelationTriple& t,
                     BellConvention convention = BellConvention::kMainText);

/// The mapped (p, q). Unlike MixedProfile, p may be negative: p >= 0 exactly
/// when the main-convention Bell inequality holds.
struct PqPair {
  double p = 0.0;
  double q = 0.0;
};

/// p = (epsilon - sigma) / sqrt 6, q = (epsilon + sigma) / (2 sqrt 6).
PqPair pq_map(const CorrelationTriple& t);
PqPair pq_map(const EpsilonSigma& es);

/// Payoffs written directly in epsilon and sigma:
///   P_A = K/12 (e^2 - s^2) + L/sqrt6 (e - s) + M/(2 sqrt6) (e + s) + N
/// and P_B with L and M exchanged. Equal to the bilinear form at pq_map(t).
PayoffPair correlation_payoffs(const GameConstants& c, const CorrelationTriple& t);

/// Coefficients that reproduce the correlation payoffs of a Bell-violating
/// triple as bilinear forms in the nonnegative p~ = -p:
///   P_A = K' p~ q + L' p~ + M q + N
///   P_B = K' p~ q + M' p~ + L q + N
/// with K' = -K, L' = -L, M' = -M.
struct ReexpressedCoefficients {
  double K_prime = 0.0;
  double L_prime = 0.0;
  double M_prime = 0.0;
  // (K', L', M, N)
  GameConstants alice_form;
  // (K', M', L, N), stored in GameConstants field order {K, L, M, N}.
  GameConstants bob_form;
  // The point (p~, q) at which the forms reproduce the payoffs.
  double p_tilde = 0.0;
  double q = 0.0;

  /// K' p~ q + L' p~ + M q + N.
  double alice_payoff() const;
  /// K' p~ q + M' p~ + L q + N.
  double bob_payoff() const;
};

/// Throws PreconditionError when the main-convention Bell inequality holds
/// for `t` (the re-expression applies only to violating triples).
ReexpressedCoefficients reexpress(const GameConstants& c, const CorrelationTriple& t);

/// Whether the violating-regime payoff pair still has the symmetric-game form
/// P_B(x, y) = P_A(y, x). True iff L = 0 and M = 0.
bool symmetric_reconstruction_possible(const GameConstants& c);

}  // namespace corrgame

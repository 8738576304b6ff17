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

#include "corrgame/bell_payoff.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "corrgame/errors.hpp"

namespace corrgame {

namespace {

bool in_unit_range(double x) { return x >= -1.0 && x <= 1.0; }

// Radicands are nonnegative on the admissible cube; allow 1e-12 of rounding.
double checked_sqrt(double radicand) {
  assert(radicand >= -1e-12);
  return std::sqrt(std::max(0.0, radicand));
}

}  // namespace

CorrelationTriple::CorrelationTriple(double ab, double ac, double bc)
    : ab_(ab), ac_(ac), bc_(bc) {
  if (!in_unit_range(ab) || !in_unit_range(ac) || !in_unit_range(bc)) {
    throw PreconditionError("correlations must lie in [-1, 1], got (" +
                            std::to_string(ab) + ", " + std::to_string(ac) + ", " +
                            std::to_string(bc) + ")");
  }
}

CorrelationTriple CorrelationTriple::from_estimate(const EstimatedTriple& e) {
  return {std::clamp(e.ab, -1.0, 1.0), std::clamp(e.ac, -1.0, 1.0),
          std::clamp(e.bc, -1.0, 1.0)};
}

EpsilonSigma epsilon_sigma(const CorrelationTriple& t) {
  const double ab = t.ab();
  const double ac = t.ac();
  const double bc = t.bc();
  return {checked_sqrt(3.0 + bc * bc + 2.0 * ab * ac),
          checked_sqrt(2.0 * (1.0 + bc) + ab * ab + ac * ac)};
}

BellCheck bell_check(const CorrelationTriple& t, BellConvention convention) {
  BellCheck out;
  out.lhs = std::abs(t.ab() - t.ac());
  out.rhs = convention == BellConvention::kMainText ? 1.0 - t.bc() : 1.0 + t.bc();
  out.holds = out.lhs <= out.rhs + kBellTolerance;
  return out;
}

PqPair pq_map(const EpsilonSigma& es) {
  return {(es.epsilon - es.sigma) / kSqrt6, (es.epsilon + es.sigma) / (2.0 * kSqrt6)};
}

PqPair pq_map(const CorrelationTriple& t) { return pq_map(epsilon_sigma(t)); }

PayoffPair correlation_payoffs(const GameConstants& c, const CorrelationTriple& t) {
  const auto [e, s] = epsilon_sigma(t);
  const double bilinear = c.K / 12.0 * (e * e - s * s) + c.N;
  const double diff = (e - s) / kSqrt6;
  const double sum = (e + s) / (2.0 * kSqrt6);
  return {bilinear + c.L * diff + c.M * sum, bilinear + c.M * diff + c.L * sum};
}

double ReexpressedCoefficients::alice_payoff() const {
  const auto& f = alice_form;
  return f.K * p_tilde * q + f.L * p_tilde + f.M * q + f.N;
}

double ReexpressedCoefficients::bob_payoff() const {
  const auto& f = bob_form;
  return f.K * p_tilde * q + f.L * p_tilde + f.M * q + f.N;
}

ReexpressedCoefficients reexpress(const GameConstants& c, const CorrelationTriple& t) {
  const EpsilonSigma es = epsilon_sigma(t);
  if (es.epsilon >= es.sigma || bell_check(t).holds) {
    throw PreconditionError(
        "re-expression needs a triple that violates |ab - ac| <= 1 - bc");
  }
  ReexpressedCoefficients out;
  out.K_prime = -c.K;
  out.L_prime = -c.L;
  out.M_prime = -c.M;
  out.alice_form = {out.K_prime, out.L_prime, c.M, c.N};
  out.bob_form = {out.K_prime, out.M_prime, c.L, c.N};
  const PqPair pq = pq_map(es);
  out.p_tilde = -pq.p;
  out.q = pq.q;
  return out;
}

bool symmetric_reconstruction_possible(const GameConstants& c) {
  return c.L == 0.0 && c.M == 0.0;
}

}  // namespace corrgame

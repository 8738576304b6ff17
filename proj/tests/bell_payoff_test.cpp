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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "corrgame/errors.hpp"
#include "oracles.hpp"

namespace corrgame {
namespace {

const GameConstants kPd{-1.0, -1.0, 4.0, 1.0};

TEST(CorrelationTriple, RejectsOutOfRange) {
  EXPECT_THROW(CorrelationTriple(1.0 + 1e-9, 0, 0), PreconditionError);
  EXPECT_THROW(CorrelationTriple(0, -2, 0), PreconditionError);
  EXPECT_THROW(CorrelationTriple(0, 0, std::nan("")), PreconditionError);
}

TEST(CorrelationTriple, FromEstimateClamps) {
  EstimatedTriple e;
  e.ab = 1.0000001;
  e.ac = -1.2;
  e.bc = 0.3;
  const CorrelationTriple t = CorrelationTriple::from_estimate(e);
  EXPECT_EQ(t.ab(), 1.0);
  EXPECT_EQ(t.ac(), -1.0);
  EXPECT_EQ(t.bc(), 0.3);
}

TEST(EpsilonSigma, Examples) {
  EpsilonSigma es = epsilon_sigma({1, 1, 1});
  EXPECT_NEAR(es.epsilon, std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(es.sigma, std::sqrt(6.0), 1e-15);
  es = epsilon_sigma({0.5, -0.5, 0.5});
  EXPECT_NEAR(es.epsilon, std::sqrt(2.75), 1e-15);
  EXPECT_NEAR(es.epsilon, 1.658312, 1e-6);
  EXPECT_NEAR(es.sigma, std::sqrt(3.5), 1e-15);
  EXPECT_NEAR(es.sigma, 1.870829, 1e-6);
  es = epsilon_sigma({0, 0, -1});
  EXPECT_EQ(es.epsilon, 2.0);
  EXPECT_EQ(es.sigma, 0.0);
}

TEST(BellCheck, Examples) {
  BellCheck b = bell_check({1, 1, 1}, BellConvention::kMainText);
  EXPECT_EQ(b.lhs, 0.0);
  EXPECT_EQ(b.rhs, 0.0);
  EXPECT_TRUE(b.holds);
  b = bell_check({0.5, -0.5, 0.5}, BellConvention::kMainText);
  EXPECT_EQ(b.lhs, 1.0);
  EXPECT_EQ(b.rhs, 0.5);
  EXPECT_FALSE(b.holds);
  b = bell_check({0.5, -0.5, 0.5}, BellConvention::kAnticorrelated);
  EXPECT_EQ(b.lhs, 1.0);
  EXPECT_EQ(b.rhs, 1.5);
  EXPECT_TRUE(b.holds);
}

TEST(PqMap, Examples) {
  PqPair pq = pq_map(CorrelationTriple{1, 1, 1});
  EXPECT_NEAR(pq.p, 0.0, 1e-15);
  EXPECT_NEAR(pq.q, 1.0, 1e-15);
  pq = pq_map(CorrelationTriple{0, 0, -1});
  EXPECT_NEAR(pq.p, 0.816497, 1e-6);
  EXPECT_NEAR(pq.q, 0.408248, 1e-6);
  pq = pq_map(CorrelationTriple{0.5, -0.5, 0.5});
  EXPECT_NEAR(pq.p, -0.086759, 1e-6);
  EXPECT_NEAR(pq.q, 0.720383, 1e-6);
}

TEST(CorrelationPayoffs, Examples) {
  PayoffPair pay = correlation_payoffs(kPd, {1, 1, 1});
  EXPECT_NEAR(pay.alice, 5.0, 1e-12);
  EXPECT_NEAR(pay.bob, 0.0, 1e-12);
  pay = correlation_payoffs(kPd, {0.5, -0.5, 0.5});
  EXPECT_NEAR(pay.alice, 4.030791048, 1e-9);
  // Bilinear form at (p, q) = (-0.0867594, 0.7203829): Kpq + Mp + Lq + N.
  EXPECT_NEAR(pay.bob, -0.004920570, 1e-8);
  pay = correlation_payoffs({0, 0, 0, 1}, {0.3, -0.9, 0.1});
  EXPECT_EQ(pay.alice, 1.0);
  EXPECT_EQ(pay.bob, 1.0);
}

class RandomTriples : public testing::Test {
 protected:
  static constexpr int kSamples = 200000;

  template <typename Fn>
  void for_each_triple(Fn&& fn) {
    std::mt19937_64 gen(4242);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < kSamples; ++i) {
      const double ab = u(gen), ac = u(gen), bc = u(gen);
      fn(CorrelationTriple{ab, ac, bc});
    }
  }
};

TEST_F(RandomTriples, DifferenceOfSquaresIdentity) {
  for_each_triple([](const CorrelationTriple& t) {
    const auto [e, s] = epsilon_sigma(t);
    const double rhs = (1 - t.bc()) * (1 - t.bc()) - (t.ab() - t.ac()) * (t.ab() - t.ac());
    ASSERT_NEAR(e * e - s * s, rhs, 1e-12);
  });
}

TEST_F(RandomTriples, SignOfPTracksBellInequality) {
  for_each_triple([](const CorrelationTriple& t) {
    const BellCheck b = bell_check(t);
    if (std::abs(b.lhs - b.rhs) <= 1e-12) return;
    ASSERT_EQ(pq_map(t).p >= 0.0, b.holds);
  });
}

TEST_F(RandomTriples, Bounds) {
  const double lo_q = 1.0 / (2.0 * std::sqrt(6.0));
  for_each_triple([&](const CorrelationTriple& t) {
    const EpsilonSigma es = epsilon_sigma(t);
    const PqPair pq = pq_map(es);
    ASSERT_GE(es.epsilon, 1.0 - 1e-12);
    ASSERT_LE(es.epsilon, kSqrt6 + 1e-12);
    ASSERT_GE(es.sigma, 0.0);
    ASSERT_LE(es.sigma, kSqrt6 + 1e-12);
    ASSERT_GE(pq.q, lo_q - 1e-12);
    ASSERT_LE(pq.q, 1.0 + 1e-12);
    ASSERT_GT(pq.p, -1.0);
    ASSERT_LE(pq.p, 1.0 + 1e-12);
  });
}

TEST_F(RandomTriples, PayoffsMatchOracleBilinearForm) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> coef(-10.0, 10.0);
  for (int g = 0; g < 10; ++g) {
    const GameConstants c{coef(gen), coef(gen), coef(gen), coef(gen)};
    int n = 0;
    for_each_triple([&](const CorrelationTriple& t) {
      if (++n > 5000) return;
      const PayoffPair pay = correlation_payoffs(c, t);
      const auto [a, b] = oracle::payoffs(c.K, c.L, c.M, c.N, {t.ab(), t.ac(), t.bc()});
      ASSERT_NEAR(pay.alice, a, 1e-12);
      ASSERT_NEAR(pay.bob, b, 1e-12);
    });
  }
}

TEST(Reexpress, PrisonersDilemmaCoefficients) {
  const ReexpressedCoefficients re = reexpress(kPd, {0.5, -0.5, 0.5});
  EXPECT_EQ(re.K_prime, 1.0);
  EXPECT_EQ(re.L_prime, 1.0);
  EXPECT_EQ(re.M_prime, -4.0);
  EXPECT_EQ(re.alice_form, (GameConstants{1, 1, 4, 1}));
  EXPECT_EQ(re.bob_form, (GameConstants{1, -4, -1, 1}));
  EXPECT_NEAR(re.p_tilde, 0.086759, 1e-6);
  EXPECT_NEAR(re.q, 0.720383, 1e-6);
  EXPECT_NEAR(re.alice_payoff(), 4.030791048, 1e-9);
  const PayoffPair pay = correlation_payoffs(kPd, {0.5, -0.5, 0.5});
  EXPECT_NEAR(re.alice_payoff(), pay.alice, 1e-12);
  EXPECT_NEAR(re.bob_payoff(), pay.bob, 1e-12);
}

TEST(Reexpress, ZeroGame) {
  const ReexpressedCoefficients re = reexpress({0, 0, 0, 2}, {0.5, -0.5, 0.5});
  EXPECT_EQ(re.K_prime, 0.0);
  EXPECT_EQ(re.L_prime, 0.0);
  EXPECT_EQ(re.M_prime, 0.0);
  EXPECT_EQ(re.alice_payoff(), 2.0);
}

TEST(Reexpress, RejectsNonViolatingTriple) {
  EXPECT_THROW(reexpress(kPd, {1, 1, 1}), PreconditionError);
  EXPECT_THROW(reexpress(kPd, {0, 0, 0}), PreconditionError);
}

TEST(SymmetricReconstruction, Examples) {
  EXPECT_FALSE(symmetric_reconstruction_possible(kPd));
  EXPECT_TRUE(symmetric_reconstruction_possible({7, 0, 0, 3}));
  EXPECT_TRUE(symmetric_reconstruction_possible({0, 0, 0, 0}));
  EXPECT_FALSE(symmetric_reconstruction_possible({0, 1, 0, 0}));
}

// For L = M = 0 the violating-regime forms satisfy P_B(x, y) = P_A(y, x);
// otherwise some point breaks it.
TEST(SymmetricReconstruction, AgreesWithPointwiseCheck) {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int i = 0; i < 200; ++i) {
    const GameConstants c{double(coef(gen)), double(coef(gen)), double(coef(gen)), 1.0};
    const ReexpressedCoefficients re = reexpress(c, {0.5, -0.5, 0.5});
    bool symmetric = true;
    for (int a = 0; a <= 10; ++a) {
      for (int b = 0; b <= 10; ++b) {
        const double x = a / 10.0, y = b / 10.0;
        const auto& A = re.alice_form;
        const auto& B = re.bob_form;
        const double pa_yx = A.K * y * x + A.L * y + A.M * x + A.N;
        const double pb_xy = B.K * x * y + B.L * x + B.M * y + B.N;
        if (std::abs(pa_yx - pb_xy) > 1e-12) symmetric = false;
      }
    }
    EXPECT_EQ(symmetric, symmetric_reconstruction_possible(c));
  }
}

}  // namespace
}  // namespace corrgame

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

#include "corrgame/game_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "corrgame/errors.hpp"

namespace corrgame {

MixedProfile::MixedProfile(double p, double q) : p_(p), q_(q) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw PreconditionError("mixed profile must lie in the unit square, got (" +
                            std::to_string(p) + ", " + std::to_string(q) + ")");
  }
}

BiMatrixGame prisoners_dilemma() { return {3.0, 0.0, 5.0, 1.0}; }

void validate(const BiMatrixGame& g) {
  if (!std::isfinite(g.r) || !std::isfinite(g.s) || !std::isfinite(g.t) ||
      !std::isfinite(g.u)) {
    throw PreconditionError("game entries must be finite");
  }
}

void validate(const GameConstants& c) {
  if (!std::isfinite(c.K) || !std::isfinite(c.L) || !std::isfinite(c.M) ||
      !std::isfinite(c.N)) {
    throw PreconditionError("game constants must be finite");
  }
}

GameConstants to_constants(const BiMatrixGame& g) {
  validate(g);
  return {g.r - g.s - g.t + g.u, g.s - g.u, g.t - g.u, g.u};
}

PayoffPair bilinear_payoffs(const GameConstants& c, double p, double q) {
  const double common = c.K * p * q + c.N;
  return {common + c.L * p + c.M * q, common + c.M * p + c.L * q};
}

PayoffPair classical_payoffs(const GameConstants& c, const MixedProfile& profile) {
  return bilinear_payoffs(c, profile.p(), profile.q());
}

namespace {

// Closed axis-aligned box [p_lo, p_hi] x [q_lo, q_hi] in the unit square.
struct Box {
  double p_lo, p_hi, q_lo, q_hi;
};

// Best-response graph of the player whose payoff slope in their own
// probability is K * other + L. `own_is_p` selects whether the player owns
// the p axis (Alice) or the q axis (Bob). Returns an empty vector with
// `whole` set when the player is always indifferent.
std::vector<Box> best_response_graph(double K, double L, bool own_is_p, bool& whole) {
  whole = false;
  std::vector<Box> out;
  // Interval [lo, hi] of the other player's probability on which the own
  // probability is pinned to `own`.
  auto pin = [&](double own, double lo, double hi) {
    if (lo > hi) return;
    if (own_is_p) {
      out.push_back({own, own, lo, hi});
    } else {
      out.push_back({lo, hi, own, own});
    }
  };
  auto free_at = [&](double other) {
    if (own_is_p) {
      out.push_back({0.0, 1.0, other, other});
    } else {
      out.push_back({other, other, 0.0, 1.0});
    }
  };

  if (K == 0.0) {
    if (L > 0.0) {
      pin(1.0, 0.0, 1.0);
    } else if (L < 0.0) {
      pin(0.0, 0.0, 1.0);
    } else {
      whole = true;
    }
    return out;
  }

  const double root = -L / K;
  // Below the root the slope has the sign of -K, above it the sign of K.
  const double below_own = K > 0.0 ? 0.0 : 1.0;
  const double above_own = K > 0.0 ? 1.0 : 0.0;
  if (root > 0.0) pin(below_own, 0.0, std::min(root, 1.0));
  if (root < 1.0) pin(above_own, std::max(root, 0.0), 1.0);
  if (root >= 0.0 && root <= 1.0) free_at(root);
  return out;
}

bool contains(const Box& outer, const Box& inner) {
  return outer.p_lo <= inner.p_lo && inner.p_hi <= outer.p_hi &&
         outer.q_lo <= inner.q_lo && inner.q_hi <= outer.q_hi;
}

bool same(const Box& a, const Box& b) {
  return a.p_lo == b.p_lo && a.p_hi == b.p_hi && a.q_lo == b.q_lo && a.q_hi == b.q_hi;
}

}  // namespace

NashSet classical_nash(const GameConstants& c) {
  validate(c);
  NashSet result;
  bool alice_whole = false;
  bool bob_whole = false;
  const auto alice = best_response_graph(c.K, c.L, /*own_is_p=*/true, alice_whole);
  const auto bob = best_response_graph(c.K, c.L, /*own_is_p=*/false, bob_whole);
  if (alice_whole || bob_whole) {
    result.all_profiles = true;
    return result;
  }

  std::vector<Box> meets;
  for (const Box& a : alice) {
    for (const Box& b : bob) {
      const Box m{std::max(a.p_lo, b.p_lo), std::min(a.p_hi, b.p_hi),
                  std::max(a.q_lo, b.q_lo), std::min(a.q_hi, b.q_hi)};
      if (m.p_lo > m.p_hi || m.q_lo > m.q_hi) continue;
      if (std::none_of(meets.begin(), meets.end(),
                       [&](const Box& x) { return same(x, m); })) {
        meets.push_back(m);
      }
    }
  }

  for (std::size_t i = 0; i < meets.size(); ++i) {
    const Box& m = meets[i];
    const bool is_point = m.p_lo == m.p_hi && m.q_lo == m.q_hi;
    if (is_point) {
      bool covered = false;
      for (std::size_t j = 0; j < meets.size(); ++j) {
        if (j != i && contains(meets[j], m)) covered = true;
      }
      if (!covered) result.points.emplace_back(m.p_lo, m.q_lo);
    } else {
      result.segments.push_back({MixedProfile(m.p_lo, m.q_lo), MixedProfile(m.p_hi, m.q_hi)});
    }
  }
  std::sort(result.points.begin(), result.points.end(),
            [](const MixedProfile& a, const MixedProfile& b) {
              return a.p() != b.p() ? a.p() < b.p() : a.q() < b.q();
            });
  return result;
}

double max_unilateral_gain(const GameConstants& c, const MixedProfile& profile) {
  const double p = profile.p();
  const double q = profile.q();
  const double alice_slope = c.K * q + c.L;
  const double bob_slope = c.K * p + c.L;
  const double alice_gain = std::max((1.0 - p) * alice_slope, -p * alice_slope);
  const double bob_gain = std::max((1.0 - q) * bob_slope, -q * bob_slope);
  return std::max({0.0, alice_gain, bob_gain});
}

std::pair<double, double> pd_nash_inequalities(const MixedProfile& star,
                                               const MixedProfile& profile) {
  return {(star.p() - profile.p()) * (1.0 + star.q()),
          (star.q() - profile.q()) * (1.0 + star.p())};
}

namespace {

double finite_number(const nlohmann::json& v, const char* where) {
  if (!v.is_number()) {
    throw PreconditionError(std::string("game file: ") + where + " must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw PreconditionError(std::string("game file: ") + where + " must be finite");
  }
  return x;
}

}  // namespace

BiMatrixGame parse_game_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError(std::string("game file: ") + e.what());
  }
  if (!doc.is_object()) throw PreconditionError("game file: expected a JSON object");

  if (doc.contains("table")) {
    const auto& table = doc["table"];
    double alice[2][2];
    double bob[2][2];
    if (!table.is_array() || table.size() != 2) {
      throw PreconditionError("game file: table must be a 2x2 array of payoff pairs");
    }
    for (int i = 0; i < 2; ++i) {
      if (!table[i].is_array() || table[i].size() != 2) {
        throw PreconditionError("game file: table must be a 2x2 array of payoff pairs");
      }
      for (int j = 0; j < 2; ++j) {
        const auto& cell = table[i][j];
        if (!cell.is_array() || cell.size() != 2) {
          throw PreconditionError("game file: each table cell must be [alice, bob]");
        }
        alice[i][j] = finite_number(cell[0], "table entry");
        bob[i][j] = finite_number(cell[1], "table entry");
      }
    }
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        if (bob[i][j] != alice[j][i]) {
          throw PreconditionError("game file: table is not symmetric (Bob's entry (" +
                                  std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                  ") differs from Alice's entry (" +
                                  std::to_string(j + 1) + "," + std::to_string(i + 1) +
                                  "))");
        }
      }
    }
    return {alice[0][0], alice[0][1], alice[1][0], alice[1][1]};
  }

  for (const char* key : {"r", "s", "t", "u"}) {
    if (!doc.contains(key)) {
      throw PreconditionError(std::string("game file: missing entry \"") + key + "\"");
    }
  }
  return {finite_number(doc["r"], "r"), finite_number(doc["s"], "s"),
          finite_number(doc["t"], "t"), finite_number(doc["u"], "u")};
}

BiMatrixGame load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open game file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_game_text(buf.str());
}

}  // namespace corrgame

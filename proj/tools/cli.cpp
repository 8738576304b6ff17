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

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "corrgame/bell_payoff.hpp"
#include "corrgame/correlation_sources.hpp"
#include "corrgame/equilibrium.hpp"
#include "corrgame/errors.hpp"
#include "corrgame/game_model.hpp"
#include "corrgame/geometry.hpp"

namespace corrgame::cli {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Raised for configuration errors; the message names the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed 9-significant-digit rendering used for CSV and console output.
std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

struct RunConfig {
  std::string command;
  std::string game = "pd";
  std::string source = "quantum";
  std::string alpha = "0,0";
  std::string beta = "0,0";
  std::string triple;
  std::string convention = "main";
  long long pairs = 100000;
  unsigned long long seed = kDefaultSeed;
  int grid = 32;
  int region_grid = 24;
  int starts = 8;
  int max_sweeps = 50;
  double tol = 1e-4;
  unsigned workers = 1;
  bool game_given = false;
  std::string out;
  std::string format;

  // Options that apply to the active command, in artifact order.
  std::vector<std::string> used;
};

// Everything that determines the result. --workers is omitted: it never
// changes the output.
ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = cfg.command;
  for (const std::string& key : cfg.used) {
    if (key == "game") j["game"] = cfg.game;
    if (key == "source") j["source"] = cfg.source;
    if (key == "alpha") j["alpha_deg"] = cfg.alpha;
    if (key == "beta") j["beta_deg"] = cfg.beta;
    if (key == "triple") j["triple"] = cfg.triple;
    if (key == "convention") j["convention"] = cfg.convention;
    if (key == "pairs") j["pairs"] = cfg.pairs;
    if (key == "seed") j["seed"] = cfg.seed;
    if (key == "grid") j["grid"] = cfg.grid;
    if (key == "region-grid") j["region_grid"] = cfg.region_grid;
    if (key == "starts") j["starts"] = cfg.starts;
    if (key == "max-sweeps") j["max_sweeps"] = cfg.max_sweeps;
    if (key == "tol") j["tol"] = cfg.tol;
  }
  j["out"] = cfg.out;
  j["format"] = cfg.format;
  return j;
}

std::vector<std::string> config_lines(const RunConfig& cfg) {
  std::vector<std::string> lines;
  const ordered_json config = config_json(cfg);
  for (const auto& [key, value] : config.items()) {
    lines.push_back(key + "=" + (value.is_string() ? value.get<std::string>() : value.dump()));
  }
  return lines;
}

// ---------------------------------------------------------------------------
// Argument resolution

SourceKind resolve_source(const RunConfig& cfg) {
  try {
    return parse_source_kind(cfg.source);
  } catch (const PreconditionError& e) {
    throw UsageError(std::string("--source: ") + e.what());
  }
}

Direction resolve_direction(const std::string& text, const char* flag) {
  try {
    return parse_direction_degrees(text);
  } catch (const PreconditionError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

CorrelationTriple resolve_triple(const std::string& text) {
  if (text.empty()) throw UsageError("--triple: required, as ab,ac,bc");
  std::vector<double> v;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(field, &used));
      if (field.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw UsageError("--triple: malformed triple \"" + text + "\" (expected ab,ac,bc)");
    }
  }
  if (v.size() != 3 || text.back() == ',') {
    throw UsageError("--triple: malformed triple \"" + text + "\" (expected ab,ac,bc)");
  }
  try {
    return {v[0], v[1], v[2]};
  } catch (const PreconditionError& e) {
    throw UsageError(std::string("--triple: ") + e.what());
  }
}

BellConvention resolve_convention(const RunConfig& cfg) {
  if (cfg.convention == "main") return BellConvention::kMainText;
  if (cfg.convention == "anti") return BellConvention::kAnticorrelated;
  throw UsageError("--convention: expected main or anti, got \"" + cfg.convention + "\"");
}

BiMatrixGame resolve_game(const std::string& text) {
  if (text == "pd") return prisoners_dilemma();
  // Inline r,s,t,u.
  if (std::count(text.begin(), text.end(), ',') == 3) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string field;
    try {
      while (std::getline(ss, field, ',')) v.push_back(std::stod(field));
      const BiMatrixGame g{v.at(0), v.at(1), v.at(2), v.at(3)};
      validate(g);
      return g;
    } catch (const std::exception&) {
      throw UsageError("--game: malformed inline game \"" + text + "\" (expected r,s,t,u)");
    }
  }
  try {
    return load_game_file(text);
  } catch (const PreconditionError& e) {
    throw UsageError(std::string("--game: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Artifact emission

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

class Artifact {
 public:
  explicit Artifact(const RunConfig& cfg) : cfg_(cfg) {}

  ordered_json& result() { return result_; }
  CsvTable& table() { return table_; }

  // Streams CSV rows straight to the file for large scans.
  void set_row_stream(std::function<void(const std::function<void(const std::vector<std::string>&)>&)> s) {
    row_stream_ = std::move(s);
  }

  void write() const {
    if (cfg_.out.empty()) return;
    std::ofstream f(cfg_.out, std::ios::binary);
    if (!f) throw UsageError("--out: cannot open \"" + cfg_.out + "\" for writing");
    if (cfg_.format == "json") {
      ordered_json doc;
      doc["tool"] = "corrgame";
      doc["version"] = kToolVersion;
      doc["config"] = config_json(cfg_);
      doc["result"] = result_;
      if (!table_.header.empty()) {
        ordered_json rows = ordered_json::array();
        for (const auto& row : table_.rows) {
          ordered_json r;
          for (std::size_t i = 0; i < row.size(); ++i) {
            ordered_json cell = ordered_json::parse(row[i], nullptr, /*allow_exceptions=*/false);
            r[table_.header[i]] = cell.is_discarded() ? ordered_json(row[i]) : cell;
          }
          rows.push_back(std::move(r));
        }
        doc["rows"] = std::move(rows);
      }
      f << doc.dump(2) << '\n';
      return;
    }
    f << "# corrgame " << kToolVersion << '\n';
    for (const std::string& line : config_lines(cfg_)) f << "# " << line << '\n';
    for (const auto& [key, value] : result_.items()) {
      if (!value.is_structured()) f << "# result." << key << '=' << value.dump() << '\n';
    }
    auto emit = [&f](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << row[i];
      f << '\n';
    };
    emit(table_.header);
    for (const auto& row : table_.rows) emit(row);
    if (row_stream_) row_stream_(emit);
  }

 private:
  const RunConfig& cfg_;
  ordered_json result_;
  CsvTable table_;
  std::function<void(const std::function<void(const std::vector<std::string>&)>&)> row_stream_;
};

ordered_json direction_json(const Direction& d) {
  const SphericalAngles a = d.to_spherical();
  return {{"theta_deg", radians_to_degrees(a.theta)}, {"phi_deg", radians_to_degrees(a.phi)}};
}

ordered_json profile_json(const DirectionalProfile& p) {
  return {{"alpha", direction_json(p.alpha)}, {"beta", direction_json(p.beta)}};
}

ordered_json certificate_json(const EquilibriumCertificate& c) {
  ordered_json j;
  j["profile"] = profile_json(c.profile);
  j["payoff_a"] = c.payoffs.alice;
  j["payoff_b"] = c.payoffs.bob;
  j["alice_improvement"] = c.alice_improvement;
  j["bob_improvement"] = c.bob_improvement;
  j["tolerance"] = c.tolerance;
  j["verified_grid_resolution"] = c.verified_grid_resolution;
  j["valid"] = c.valid();
  return j;
}

ordered_json summary_json(const RegionSummary& s) {
  ordered_json j;
  j["samples"] = s.samples;
  j["min_p"] = s.min_p;
  j["max_p"] = s.max_p;
  j["min_q"] = s.min_q;
  j["max_q"] = s.max_q;
  j["bell_holds_fraction"] = s.bell_holds_fraction();
  j["violation_fraction"] = 1.0 - s.bell_holds_fraction();
  j["min_distance_to_origin"] = s.min_distance_to_origin;
  j["argmin_p"] = profile_json(s.argmin_p);
  return j;
}

std::vector<std::string> angle_cells(const SphericalAngles& a, const SphericalAngles& b) {
  return {fmt(radians_to_degrees(a.theta)), fmt(radians_to_degrees(a.phi)),
          fmt(radians_to_degrees(b.theta)), fmt(radians_to_degrees(b.phi))};
}

// ---------------------------------------------------------------------------
// Commands

void cmd_bell_check(const RunConfig& cfg, Artifact& art, std::ostream& out) {
  const CorrelationTriple t = resolve_triple(cfg.triple);
  const BellConvention conv = resolve_convention(cfg);
  const BellCheck bc = bell_check(t, conv);
  const EpsilonSigma es = epsilon_sigma(t);
  const PqPair pq = pq_map(es);
  out << "lhs=" << fmt(bc.lhs) << " rhs=" << fmt(bc.rhs)
      << (bc.holds ? " holds" : " violated") << '\n'
      << "epsilon=" << fmt(es.epsilon) << " sigma=" << fmt(es.sigma) << '\n'
      << "p=" << fmt(pq.p) << " q=" << fmt(pq.q) << '\n';
  auto& r = art.result();
  r["lhs"] = bc.lhs;
  r["rhs"] = bc.rhs;
  r["holds"] = bc.holds;
  r["epsilon"] = es.epsilon;
  r["sigma"] = es.sigma;
  r["p"] = pq.p;
  r["q"] = pq.q;
  art.table() = {{"ab", "ac", "bc", "lhs", "rhs", "holds", "epsilon", "sigma", "p", "q"},
                 {{fmt(t.ab()), fmt(t.ac()), fmt(t.bc()), fmt(bc.lhs), fmt(bc.rhs),
                   fmt_bool(bc.holds), fmt(es.epsilon), fmt(es.sigma), fmt(pq.p), fmt(pq.q)}}};
}

void cmd_payoff(const RunConfig& cfg, Artifact& art, std::ostream& out, bool from_directions) {
  const GameConstants c = to_constants(resolve_game(cfg.game));
  std::optional<CorrelationTriple> t;
  if (from_directions) {
    const DirectionalProfile profile{resolve_direction(cfg.alpha, "--alpha"),
                                     resolve_direction(cfg.beta, "--beta")};
    t = triple_of(resolve_source(cfg), profile);
  } else {
    t = resolve_triple(cfg.triple);
  }
  const EpsilonSigma es = epsilon_sigma(*t);
  const PqPair pq = pq_map(es);
  const BellCheck bc = bell_check(*t);
  const PayoffPair pay = correlation_payoffs(c, *t);
  out << "K=" << fmt(c.K) << " L=" << fmt(c.L) << " M=" << fmt(c.M) << " N=" << fmt(c.N) << '\n'
      << "triple=(" << fmt(t->ab()) << ", " << fmt(t->ac()) << ", " << fmt(t->bc()) << ")\n"
      << "p=" << fmt(pq.p) << " q=" << fmt(pq.q) << (bc.holds ? " (bell holds)" : " (bell violated)")
      << '\n'
      << "payoffs=(" << fmt(pay.alice) << ", " << fmt(pay.bob) << ")\n";
  auto& r = art.result();
  r["K"] = c.K;
  r["L"] = c.L;
  r["M"] = c.M;
  r["N"] = c.N;
  r["ab"] = t->ab();
  r["ac"] = t->ac();
  r["bc"] = t->bc();
  r["epsilon"] = es.epsilon;
  r["sigma"] = es.sigma;
  r["p"] = pq.p;
  r["q"] = pq.q;
  r["bell_holds"] = bc.holds;
  r["payoff_a"] = pay.alice;
  r["payoff_b"] = pay.bob;
  if (!bc.holds) {
    const ReexpressedCoefficients re = reexpress(c, *t);
    out << "re-expressed: K'=" << fmt(re.K_prime) << " L'=" << fmt(re.L_prime)
        << " M'=" << fmt(re.M_prime) << " p~=" << fmt(re.p_tilde) << '\n';
    r["K_prime"] = re.K_prime;
    r["L_prime"] = re.L_prime;
    r["M_prime"] = re.M_prime;
    r["p_tilde"] = re.p_tilde;
  }
  r["symmetric_reconstruction_possible"] = symmetric_reconstruction_possible(c);
  art.table() = {{"ab", "ac", "bc", "epsilon", "sigma", "p", "q", "bell_holds", "payoff_a",
                  "payoff_b"},
                 {{fmt(t->ab()), fmt(t->ac()), fmt(t->bc()), fmt(es.epsilon), fmt(es.sigma),
                   fmt(pq.p), fmt(pq.q), fmt_bool(bc.holds), fmt(pay.alice), fmt(pay.bob)}}};
}

void cmd_simulate(const RunConfig& cfg, Artifact& art, std::ostream& out) {
  const SourceKind kind = resolve_source(cfg);
  const Direction alpha = resolve_direction(cfg.alpha, "--alpha");
  const Direction beta = resolve_direction(cfg.beta, "--beta");
  if (cfg.pairs < 1) throw UsageError("--pairs: must be at least 1");
  const SessionTally tally = simulate_session(kind, alpha, beta, cfg.pairs, {cfg.seed, cfg.workers});
  const EstimatedTriple est = estimate_triple(tally);
  const DirectionalProfile profile{alpha, beta};
  const CorrelationTriple analytic = triple_of(kind, profile);

  auto& r = art.result();
  ordered_json buckets = ordered_json::array();
  CsvTable table{{"bucket", "count", "product_sum", "estimate", "std_error", "analytic"}, {}};
  const double cc_analytic = is_anticorrelated(kind) ? -1.0 : 1.0;
  const std::array<std::pair<double, double>, 4> values = {
      std::pair{est.ab, est.se_ab}, {est.ac, est.se_ac}, {est.bc, est.se_bc}, {est.cc, est.se_cc}};
  const std::array<double, 4> exact = {analytic.ab(), analytic.ac(), analytic.bc(), cc_analytic};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto bucket = static_cast<Bucket>(i);
    const BucketTally& b = tally[bucket];
    buckets.push_back({{"bucket", std::string(to_string(bucket))},
                       {"count", b.count},
                       {"product_sum", b.product_sum},
                       {"estimate", values[i].first},
                       {"std_error", values[i].second},
                       {"analytic", exact[i]}});
    table.rows.push_back({std::string(to_string(bucket)), std::to_string(b.count),
                          std::to_string(b.product_sum), fmt(values[i].first),
                          fmt(values[i].second), fmt(exact[i])});
    out << to_string(bucket) << ": n=" << b.count << " estimate=" << fmt(values[i].first)
        << " se=" << fmt(values[i].second) << " analytic=" << fmt(exact[i]) << '\n';
  }
  r["buckets"] = buckets;
  const CorrelationTriple t = CorrelationTriple::from_estimate(est);
  const PqPair pq = pq_map(t);
  const BellCheck bc = bell_check(t);
  r["bell_holds"] = bc.holds;
  r["p"] = pq.p;
  r["q"] = pq.q;
  out << "estimated p=" << fmt(pq.p) << " q=" << fmt(pq.q)
      << (bc.holds ? " (bell holds)" : " (bell violated)") << '\n';
  if (cfg.game_given) {
    const PayoffPair pay = correlation_payoffs(to_constants(resolve_game(cfg.game)), t);
    r["payoff_a"] = pay.alice;
    r["payoff_b"] = pay.bob;
    out << "payoffs=(" << fmt(pay.alice) << ", " << fmt(pay.bob) << ")\n";
  }
  art.table() = std::move(table);
}

const std::vector<std::string> kScanHeader = {
    "theta_a", "phi_a", "theta_b", "phi_b", "ab", "ac", "bc", "epsilon",
    "sigma", "p", "q", "bell_holds", "payoff_a", "payoff_b"};

std::vector<std::string> scan_row(const RegionSample& s, const PayoffPair* pay) {
  std::vector<std::string> row = angle_cells(s.alice_angles, s.bob_angles);
  for (double v : {s.triple.ab(), s.triple.ac(), s.triple.bc(), s.epsilon_sigma.epsilon,
                   s.epsilon_sigma.sigma, s.pq.p, s.pq.q}) {
    row.push_back(fmt(v));
  }
  row.push_back(fmt_bool(s.bell_holds));
  if (pay) {
    row.push_back(fmt(pay->alice));
    row.push_back(fmt(pay->bob));
  }
  return row;
}

void cmd_region(const RunConfig& cfg, Artifact& art, std::ostream& out, bool with_payoffs) {
  const SourceKind kind = resolve_source(cfg);
  std::optional<GameConstants> c;
  if (with_payoffs) c = to_constants(resolve_game(cfg.game));
  if (cfg.grid < 8) throw UsageError("--grid: must be at least 8");

  const RegionSummary summary = region_scan(kind, cfg.grid, {}, cfg.workers);
  art.result() = summary_json(summary);
  out << "samples=" << summary.samples << " min_p=" << fmt(summary.min_p)
      << " max_p=" << fmt(summary.max_p) << " min_q=" << fmt(summary.min_q)
      << " max_q=" << fmt(summary.max_q)
      << " bell_holds_fraction=" << fmt(summary.bell_holds_fraction()) << '\n';

  std::vector<std::string> header = kScanHeader;
  if (!with_payoffs) header.resize(header.size() - 2);
  art.table().header = header;
  if (cfg.format == "json") {
    region_scan(kind, cfg.grid, [&](const RegionSample& s) {
      std::optional<PayoffPair> pay;
      if (c) pay = correlation_payoffs(*c, s.triple);
      art.table().rows.push_back(scan_row(s, pay ? &*pay : nullptr));
    }, cfg.workers);
    return;
  }
  const unsigned workers = cfg.workers;
  const int grid = cfg.grid;
  art.set_row_stream([kind, c, grid, workers](const auto& emit) {
    region_scan(kind, grid, [&](const RegionSample& s) {
      std::optional<PayoffPair> pay;
      if (c) pay = correlation_payoffs(*c, s.triple);
      emit(scan_row(s, pay ? &*pay : nullptr));
    }, workers);
  });
}

const std::vector<std::string> kCertificateHeader = {
    "theta_a", "phi_a", "theta_b", "phi_b", "payoff_a", "payoff_b",
    "alice_improvement", "bob_improvement", "tolerance", "verified_grid", "valid"};

std::vector<std::string> certificate_row(const EquilibriumCertificate& c) {
  std::vector<std::string> row =
      angle_cells(c.profile.alpha.to_spherical(), c.profile.beta.to_spherical());
  for (double v : {c.payoffs.alice, c.payoffs.bob, c.alice_improvement, c.bob_improvement,
                   c.tolerance}) {
    row.push_back(fmt(v));
  }
  row.push_back(std::to_string(c.verified_grid_resolution));
  row.push_back(fmt_bool(c.valid()));
  return row;
}

void cmd_ne_search(const RunConfig& cfg, Artifact& art, std::ostream& out) {
  const GameConstants c = to_constants(resolve_game(cfg.game));
  const SourceKind kind = resolve_source(cfg);
  if (cfg.grid < 8) throw UsageError("--grid: must be at least 8");
  if (!(cfg.tol > 0.0)) throw UsageError("--tol: must be positive");
  NeSearchOptions options;
  options.grid_n = cfg.grid;
  options.tol = cfg.tol;
  options.seed = cfg.seed;
  options.random_starts = cfg.starts;
  options.max_sweeps = cfg.max_sweeps;
  options.workers = cfg.workers;
  const NeSearchResult result = ne_search(c, kind, options);

  auto& r = art.result();
  r["all_profiles"] = result.all_profiles;
  if (result.all_profiles) {
    out << "payoffs do not depend on the directions: every profile is an equilibrium\n";
    art.table().header = kCertificateHeader;
    return;
  }
  ordered_json starts = ordered_json::array();
  int converged = 0;
  for (const StartOutcome& s : result.starts) {
    converged += s.converged ? 1 : 0;
    starts.push_back({{"start", profile_json(s.start)},
                      {"converged", s.converged},
                      {"sweeps", s.sweeps},
                      {"rejected_on_verification", s.rejected_on_verification}});
  }
  r["starts"] = starts;
  ordered_json certs = ordered_json::array();
  CsvTable table{kCertificateHeader, {}};
  for (const auto& cert : result.certificates) {
    certs.push_back(certificate_json(cert));
    table.rows.push_back(certificate_row(cert));
  }
  r["certificates"] = certs;
  art.table() = std::move(table);

  out << converged << "/" << result.starts.size() << " starts converged; "
      << result.certificates.size() << " distinct certified equilibria\n";
  for (const auto& cert : result.certificates) {
    const auto a = cert.profile.alpha.to_spherical();
    const auto b = cert.profile.beta.to_spherical();
    out << "  alpha=(" << fmt(radians_to_degrees(a.theta)) << ", " << fmt(radians_to_degrees(a.phi))
        << ") beta=(" << fmt(radians_to_degrees(b.theta)) << ", " << fmt(radians_to_degrees(b.phi))
        << ") payoffs=(" << fmt(cert.payoffs.alice) << ", " << fmt(cert.payoffs.bob)
        << ") improvements=(" << fmt(cert.alice_improvement) << ", "
        << fmt(cert.bob_improvement) << ")\n";
  }
}

void cmd_pd_demo(const RunConfig& cfg, Artifact& art, std::ostream& out) {
  if (cfg.grid < 8) throw UsageError("--grid: must be at least 8");
  if (cfg.region_grid < 8) throw UsageError("--region-grid: must be at least 8");
  if (!(cfg.tol > 0.0)) throw UsageError("--tol: must be positive");
  PdExperimentOptions options;
  options.grid_n = cfg.grid;
  options.tol = cfg.tol;
  options.seed = cfg.seed;
  options.region_grid = cfg.region_grid;
  options.workers = cfg.workers;
  const PdDisappearanceReport rep = pd_disappearance_experiment(options);

  auto& r = art.result();
  ordered_json classical = ordered_json::array();
  out << "classical:";
  for (std::size_t i = 0; i < rep.classical.points.size(); ++i) {
    const auto& pt = rep.classical.points[i];
    const auto& pay = rep.classical_payoffs[i];
    classical.push_back({{"p", pt.p()}, {"q", pt.q()}, {"payoff_a", pay.alice},
                         {"payoff_b", pay.bob}});
    out << " NE (" << fmt(pt.p()) << ", " << fmt(pt.q()) << ") payoffs (" << fmt(pay.alice)
        << ", " << fmt(pay.bob) << ")";
  }
  out << '\n';
  r["classical_equilibria"] = classical;

  ordered_json rows = ordered_json::array();
  CsvTable table{{"theta_a", "phi_a", "theta_b", "phi_b", "lhv_p", "lhv_q", "quantum_p",
                  "quantum_q", "lhv_alice_improvement", "lhv_bob_improvement",
                  "quantum_alice_improvement", "quantum_bob_improvement", "disappears"},
                 {}};
  out << "lhv equilibria: " << rep.rows.size() << '\n';
  for (const DisappearanceRow& row : rep.rows) {
    rows.push_back({{"lhv", certificate_json(row.lhv)},
                    {"quantum", certificate_json(row.quantum)},
                    {"lhv_pq", {{"p", row.lhv_pq.p}, {"q", row.lhv_pq.q}}},
                    {"quantum_pq", {{"p", row.quantum_pq.p}, {"q", row.quantum_pq.q}}},
                    {"disappears", row.disappears}});
    std::vector<std::string> cells = angle_cells(row.lhv.profile.alpha.to_spherical(),
                                                 row.lhv.profile.beta.to_spherical());
    for (double v : {row.lhv_pq.p, row.lhv_pq.q, row.quantum_pq.p, row.quantum_pq.q,
                     row.lhv.alice_improvement, row.lhv.bob_improvement,
                     row.quantum.alice_improvement, row.quantum.bob_improvement}) {
      cells.push_back(fmt(v));
    }
    cells.push_back(fmt_bool(row.disappears));
    out << "  " << cells[0] << "," << cells[1] << " / " << cells[2] << "," << cells[3]
        << ": quantum improvements (" << cells[10] << ", " << cells[11] << ")"
        << (row.disappears ? " -> not an equilibrium under quantum correlations" : "") << '\n';
    table.rows.push_back(std::move(cells));
  }
  r["lhv_equilibria"] = rows;
  r["lhv_region"] = summary_json(rep.lhv_region);
  r["quantum_region"] = summary_json(rep.quantum_region);
  r["classical_ne_attainable"] = rep.classical_ne_attainable;
  r["symmetric_reconstruction_possible"] = rep.symmetric_reconstruction;
  out << "quantum region: min_p=" << fmt(rep.quantum_region.min_p)
      << " violation_fraction=" << fmt(1.0 - rep.quantum_region.bell_holds_fraction()) << '\n'
      << "lhv region: min_p=" << fmt(rep.lhv_region.min_p)
      << " min_q=" << fmt(rep.lhv_region.min_q) << '\n'
      << "(0,0) attainable: " << fmt_bool(rep.classical_ne_attainable) << '\n'
      << "symmetric reconstruction possible: " << fmt_bool(rep.symmetric_reconstruction) << '\n';
  art.table() = std::move(table);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Correlation games: Bell-inequality payoffs, simulation and equilibria", "corrgame"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  auto add_common = [&cfg](CLI::App* sub, bool seeded) {
    sub->add_option("--out", cfg.out, "Artifact path");
    sub->add_option("--format", cfg.format, "Artifact format: csv or json (default from --out extension, else json)")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--workers", cfg.workers, "Worker threads; never changes results")
        ->check(CLI::PositiveNumber);
    if (seeded) sub->add_option("--seed", cfg.seed, "Master seed (default 1)");
  };

  struct Command {
    const char* name;
    const char* help;
    std::vector<std::string> options;
  };
  const std::vector<Command> commands = {
      {"bell-check", "Evaluate the Bell inequality, epsilon/sigma and (p, q) for a triple",
       {"triple", "convention"}},
      {"payoff", "Correlation payoffs of a game for a triple or a directional profile",
       {"game", "triple", "source", "alpha", "beta"}},
      {"simulate", "Monte Carlo measurement session and correlation estimates",
       {"source", "alpha", "beta", "pairs", "seed", "game"}},
      {"scan", "Correlations, (p, q) and payoffs over the direction-pair lattice",
       {"game", "source", "grid"}},
      {"region", "Attainable (p, q) region over the direction-pair lattice",
       {"source", "grid"}},
      {"ne-search", "Directional Nash equilibrium search with certificates",
       {"game", "source", "grid", "tol", "seed", "starts", "max-sweeps"}},
      {"pd-demo", "Prisoners' Dilemma equilibrium-disappearance experiment",
       {"grid", "tol", "seed", "region-grid"}},
  };

  for (const Command& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    const auto& opts = cmd.options;
    auto has = [&](const char* o) { return std::find(opts.begin(), opts.end(), o) != opts.end(); };
    if (has("triple")) sub->add_option("--triple", cfg.triple, "Correlations ab,ac,bc");
    if (has("convention")) sub->add_option("--convention", cfg.convention, "main or anti");
    if (has("game")) sub->add_option("--game", cfg.game, "pd, inline r,s,t,u, or a game file");
    if (has("source")) sub->add_option("--source", cfg.source, "quantum, quantum-anti, lhv, lhv-anti");
    if (has("alpha")) sub->add_option("--alpha", cfg.alpha, "Alice's direction theta,phi in degrees");
    if (has("beta")) sub->add_option("--beta", cfg.beta, "Bob's direction theta,phi in degrees");
    if (has("pairs")) sub->add_option("--pairs", cfg.pairs, "Number of pairs");
    if (has("grid")) sub->add_option("--grid", cfg.grid, "Direction lattice resolution");
    if (has("region-grid")) sub->add_option("--region-grid", cfg.region_grid, "Region scan resolution");
    if (has("tol")) sub->add_option("--tol", cfg.tol, "Equilibrium tolerance");
    if (has("starts")) sub->add_option("--starts", cfg.starts, "Random starting profiles");
    if (has("max-sweeps")) sub->add_option("--max-sweeps", cfg.max_sweeps, "Best-response sweep limit");
    add_common(sub, has("seed"));
    sub->callback([&cfg, sub, opts] {
      cfg.command = sub->get_name();
      cfg.used = opts;
      if (sub->get_option_no_throw("--game") != nullptr) {
        cfg.game_given = sub->count("--game") > 0;
      }
      if (cfg.command == "simulate" && !cfg.game_given) {
        cfg.used.erase(std::remove(cfg.used.begin(), cfg.used.end(), "game"), cfg.used.end());
      }
    });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (cfg.format.empty()) {
    const bool csv = cfg.out.size() >= 4 && cfg.out.compare(cfg.out.size() - 4, 4, ".csv") == 0;
    cfg.format = csv ? "csv" : "json";
  }

  try {
    // payoff takes either a triple or a directional profile.
    if (cfg.command == "payoff") {
      const bool from_directions = cfg.triple.empty();
      auto& used = cfg.used;
      const auto drop = [&used](const std::vector<std::string>& keys) {
        for (const auto& k : keys) used.erase(std::remove(used.begin(), used.end(), k), used.end());
      };
      drop(from_directions ? std::vector<std::string>{"triple"}
                           : std::vector<std::string>{"source", "alpha", "beta"});
      Artifact art(cfg);
      cmd_payoff(cfg, art, out, from_directions);
      art.write();
      return 0;
    }
    Artifact art(cfg);
    if (cfg.command == "bell-check") {
      cmd_bell_check(cfg, art, out);
    } else if (cfg.command == "simulate") {
      cmd_simulate(cfg, art, out);
    } else if (cfg.command == "scan") {
      cmd_region(cfg, art, out, /*with_payoffs=*/true);
    } else if (cfg.command == "region") {
      cmd_region(cfg, art, out, /*with_payoffs=*/false);
    } else if (cfg.command == "ne-search") {
      cmd_ne_search(cfg, art, out);
    } else if (cfg.command == "pd-demo") {
      cmd_pd_demo(cfg, art, out);
    }
    art.write();
  } catch (const UsageError& e) {
    err << "corrgame " << cfg.command << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "corrgame " << cfg.command << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace corrgame::cli

#pragma once

// In-process implementations of the CLI subcommands. Each returns the full
// output text and an exit code (0 success, 1 violation, 2 config error);
// configuration problems surface as ConfigError.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "extremal/array_sums.hpp"
#include "extremal/config.hpp"
#include "extremal/heavy_tails.hpp"
#include "extremal/lower_bounds.hpp"
#include "extremal/max_bounds.hpp"
#include "extremal/report.hpp"
#include "extremal/sim_harness.hpp"
#include "extremal/verification.hpp"

namespace extremal {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;

struct CommandResult {
  std::string output;
  int exit_code = kExitOk;
};

inline CommandResult cmd_conjugate(const RunConfig& cfg) {
  validate_config(cfg);
  const YoungFunction nu = cfg.family.young();
  CsvReport csv(cfg);
  csv.comment("family", nu.describe());
  csv.columns({"u", "conjugate"});
  for (double u : cfg.u_grid) csv.row({u, legendre([&](double x) { return nu(x); }, u)});
  return {csv.str(), kExitOk};
}

/// Rows (n, q_n, w_n, z_n) and a footer with K and the limsup bound 1 + K.
/// Power exponents have z_n = m ln n exactly, so their K is 1/m in closed form.
inline CommandResult cmd_norming(const RunConfig& cfg) {
  validate_config(cfg);
  const YoungFunction nu = cfg.family.young();
  CsvReport csv(cfg);
  csv.comment("family", nu.describe());
  csv.columns({"n", "q_n", "w_n", "z_n"});
  for (double n : cfg.n_list) {
    const MaxNorming m = norming_homogeneous(nu, n);
    csv.row({m.n, m.q, m.w, m.z});
  }
  const RateSequence rate = cfg.family.tag == FamilyTag::power
                                ? RateSequence::log_linear(cfg.family.get("m"))
                                : RateSequence::custom([nu](double n) { return norming_homogeneous(nu, n).z; });
  const double K = K_constant(rate, cfg.n_max);
  csv.comment("K", K);
  csv.comment("limsup_bound", limsup_bound(K));
  return {csv.str(), kExitOk};
}

namespace command_detail {

inline void require(bool ok, const char* field, const std::string& msg) {
  if (!ok) throw ConfigError(field, msg);
}

inline double first_n(const RunConfig& cfg, double min_n) {
  require(!cfg.n_list.empty(), "grid.n", "this bound needs n in grid.n");
  require(cfg.n_list.front() >= min_n, "grid.n", "n must be >= " + format_real(min_n));
  return cfg.n_list.front();
}

inline void require_u(const RunConfig& cfg, double lo, double hi, const std::string& what) {
  for (double u : cfg.u_grid)
    require(u >= lo && u <= hi, "grid.u", what + " needs u in [" + format_real(lo) + ", " + format_real(hi) + "]");
}

}  // namespace command_detail

/// Evaluates one bound (run.bound) on the u grid.
inline CommandResult cmd_bound(const RunConfig& cfg) {
  using namespace command_detail;
  validate_config(cfg);
  CsvReport csv(cfg);
  const std::string& kind = cfg.bound_kind;
  csv.comment("bound", kind);

  if (kind == "rho-upper") {
    require_u(cfg, 0.0, kInf, kind);
    csv.columns({"u", "bound"});
    for (double u : cfg.u_grid) csv.row({u, rho_upper_bound(u)});
  } else if (kind == "rho-lower") {
    const YoungFunction nu = cfg.family.young();
    require(nu.has_second_derivative(), "family.tag", "rho-lower needs nu''");
    const double n = first_n(cfg, 3.0);
    const double gamma = cfg.gamma > 0.0 ? cfg.gamma : default_gamma(n);
    require(gamma <= 1.0, "run.gamma", "gamma must lie in (0, 1]");
    const MaxNorming norm = norming_homogeneous(nu, n);
    const LowerBoundWindow win = theta_system(nu, norm, gamma);
    require_u(cfg, 1.0, win.theta, kind);
    csv.comment("gamma", gamma).comment("theta", win.theta).comment("R", win.R).comment("eps", win.eps);
    csv.columns({"u", "lower", "exact", "upper"});
    for (double u : cfg.u_grid) csv.row({u, rho_lower_bound(u, win), exact_rho_tail(nu, norm, u), rho_upper_bound(u)});
  } else if (kind == "preliminary") {
    const YoungFunction nu = cfg.family.young();
    const auto sm = supermult_check(nu, numeric::log_grid(0.05, 50.0, 60));
    require(sm.holds, "family.tag", "nu is not supermultiplicative on the test grid");
    const double u1 = std::max(sm.u1_estimate, 1e-9);
    const long k1 = k1_index(nu, u1);
    const double n = first_n(cfg, static_cast<double>(k1));
    const double u2 = std::max(nu.inverse(1.0), u1);
    for (double u : cfg.u_grid) require(u > u2, "grid.u", "preliminary needs u > u2 = " + format_real(u2));
    csv.comment("u1", u1).comment("u2", u2).comment("k1", static_cast<double>(k1));
    csv.columns({"u", "p_n", "p_bar", "p_plus"});
    for (double u : cfg.u_grid) {
      const auto b = preliminary_bounds(nu, u1, static_cast<long>(n), u);
      csv.row({u, b.p_n, b.p_bar, b.p_plus});
    }
  } else if (kind == "sum-tail") {
    require(cfg.beta > 0.0, "run.beta", "beta must be positive");
    require_u(cfg, 0.0, kInf, kind);
    const double n = first_n(cfg, 1.0);
    const ArrayModel model = ArrayModel::subgaussian_iid(cfg.beta);
    csv.columns({"u", "bound"});
    for (double u : cfg.u_grid) csv.row({u, sum_tail_bound(model, static_cast<long>(n), u)});
  } else if (kind == "pisier") {
    require(cfg.family.tag == FamilyTag::pareto, "family.tag", "pisier needs the pareto family");
    require_u(cfg, 1.0, kInf, kind);
    csv.columns({"u", "bound"});
    for (double u : cfg.u_grid) csv.row({u, pisier_bound(cfg.family.get("p"), u)});
  } else if (kind == "pisier-lower") {
    require(cfg.family.tag == FamilyTag::pareto, "family.tag", "pisier-lower needs the pareto family");
    require_u(cfg, 2.0, kInf, kind);
    const double p = cfg.family.get("p");
    const double n = first_n(cfg, 1.0);
    const ExactTailDistribution dist = ExactTailDistribution::pareto(p);
    csv.columns({"u", "lower", "exact"});
    for (double u : cfg.u_grid)
      csv.row({u, pisier_lower(p, static_cast<long>(n), u), exact_max_tail(dist, n, u * std::pow(n, 1.0 / p))});
  } else if (kind == "heavy-max") {
    const HeavyTailSpec spec = cfg.family.heavy();
    require_u(cfg, 1.0, kInf, kind);
    for (double n : cfg.n_list) {
      require(n >= 1.0, "grid.n", "U_n needs n >= 1");
      csv.comment("U_n[n=" + format_real(n) + "]", U_n(spec.exponent, spec.L, n));
    }
    csv.columns({"x", "bound"});
    for (double x : cfg.u_grid) csv.row({x, heavy_max_bound(spec.exponent, spec.L, x)});
  } else if (kind == "rosenthal") {
    require(cfg.family.tag == FamilyTag::beta_gamma_L, "family.tag", "rosenthal needs the beta-gamma-L family");
    const HeavyTailSpec spec = cfg.family.heavy();
    require(spec.exponent > 2.0, "family.beta", "rosenthal needs beta > 2");
    require(cfg.constant > 0.0, "run.constant", "constant must be positive");
    require_u(cfg, kE, kInf, kind);
    csv.columns({"x", "shape"});
    for (double x : cfg.u_grid) csv.row({x, rosenthal_sum_tail(spec, cfg.constant, x)});
  } else if (kind == "y-uniform") {
    require_u(cfg, 1.5, kInf, kind);
    csv.columns({"z", "bound"});
    for (double z : cfg.u_grid) csv.row({z, Y_uniform_bound(z)});
  } else if (kind == "gls-tail") {
    require(cfg.family.tag == FamilyTag::power, "family.tag", "gls-tail needs the power family (psi_m)");
    const double m = cfg.family.get("m");
    require(m >= 1.0, "family.m", "psi_m needs m >= 1");
    require_u(cfg, kE, kInf, kind);
    const GeneratingPsi psi = GeneratingPsi::power(m);
    csv.columns({"y", "bound"});
    for (double y : cfg.u_grid) csv.row({y, gls_tail_bound(psi, 1.0, y)});
  } else {
    throw ConfigError("run.bound",
                      "unknown bound '" + kind +
                          "' (rho-upper, rho-lower, preliminary, sum-tail, pisier, pisier-lower, heavy-max, "
                          "rosenthal, y-uniform, gls-tail)");
  }
  return {csv.str(), kExitOk};
}

/// Runs the default suite and reports JSON; exit 1 iff any check has violations.
inline CommandResult cmd_verify(const RunConfig& cfg) {
  validate_config(cfg);
  const auto reports = default_suite(cfg);
  nlohmann::ordered_json j = json_header(cfg);
  j["self_test"] = cfg.self_test;
  j["checks"] = nlohmann::ordered_json::array();
  std::size_t total = 0;
  std::vector<std::string> failing;
  for (const auto& r : reports) {
    j["checks"].push_back(r.to_json());
    total += r.violations.size();
    if (!r.passed()) failing.push_back(r.check_id);
  }
  j["total_violations"] = total;
  j["failing_checks"] = failing;
  return {j.dump(2) + "\n", total == 0 ? kExitOk : kExitViolation};
}

/// One value per line; '#' comments and blank lines are skipped.
inline std::vector<double> read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("run.input", "cannot open '" + path + "'");
  std::vector<double> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = config_detail::trim(line);
    if (body.empty() || body[0] == '#') continue;
    const auto cols = static_cast<std::size_t>(std::count(body.begin(), body.end(), ',')) + 1;
    if (cols != 1)
      throw ConfigError("run.input",
                        "line " + std::to_string(line_no) + ": expected 1 column, found " + std::to_string(cols));
    out.push_back(config_detail::parse_real("run.input line " + std::to_string(line_no), body));
  }
  if (out.size() < 2) throw ConfigError("run.input", "need at least 2 samples");
  return out;
}

/// Violation rate ceiling δ + 3√(δ/R) for R replications.
inline double replication_rate_ceiling(double delta, long R) {
  return delta + 3.0 * std::sqrt(delta / static_cast<double>(R));
}

/// Fraction of R generator replications (stream_id = replication index,
/// θ = 0) whose running mean leaves the band at some n ≤ N_max.
inline double replication_violation_rate(SubgaussianKind kind, double beta, double delta, long n_max, long R,
                                         std::uint64_t seed) {
  const CertBand band(beta, delta);
  long hits = 0;
  for (long r = 0; r < R; ++r) {
    RandomStream stream(RngSpec{seed, static_cast<std::uint64_t>(r)});
    RunningCertifier cert(band, 0.0);
    for (long i = 0; i < n_max; ++i) {
      cert.push(beta * (kind == SubgaussianKind::gaussian ? stream.normal() : stream.rademacher()));
      if (cert.ever_violated()) break;
    }
    hits += cert.ever_violated() ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(R);
}

inline CommandResult cmd_mc_cert(const RunConfig& cfg) {
  validate_config(cfg);
  const CertBand band(cfg.beta, cfg.delta);
  const SubgaussianKind kind = cfg.generator == "rademacher" ? SubgaussianKind::rademacher : SubgaussianKind::gaussian;
  CsvReport csv(cfg);
  csv.comment("delta", cfg.delta).comment("z_o", band.z_o).comment("beta", cfg.beta);

  std::vector<double> samples;
  std::optional<double> theta;
  if (!cfg.input_path.empty()) {
    samples = read_sample_file(cfg.input_path);
    if (!std::isnan(cfg.theta)) theta = cfg.theta;
    csv.comment("source", cfg.input_path);
  } else {
    samples = sample_subgaussian(kind, RngSpec{cfg.seed, 0}, static_cast<std::size_t>(cfg.n_max));
    for (double& x : samples) x *= cfg.beta;
    theta = 0.0;
    csv.comment("source", cfg.generator);
  }

  int code = kExitOk;
  if (cfg.replications > 1) {
    if (!cfg.input_path.empty()) throw ConfigError("run.replications", "replication mode needs a generator");
    const double rate = replication_violation_rate(kind, cfg.beta, cfg.delta, cfg.n_max, cfg.replications, cfg.seed);
    const double ceiling = replication_rate_ceiling(cfg.delta, cfg.replications);
    csv.comment("replications", static_cast<double>(cfg.replications))
        .comment("violation_rate", rate)
        .comment("rate_ceiling", ceiling);
    if (rate > ceiling) code = kExitViolation;
  }

  const CertReport rep = mc_certify(samples, cfg.beta, cfg.delta, theta);
  csv.comment("any_violation", rep.any_violation ? "true" : "false");
  csv.columns({"n", "theta_n", "radius", "violated"});
  for (const auto& r : rep.rows)
    csv.row_cells({std::to_string(r.n), format_real(r.theta_n), format_real(r.radius), r.violated ? "1" : "0"});
  return {csv.str(), code};
}

/// Exact-tail samples (no u grid) or the empirical tail with DKW envelopes
/// next to the exact tail.
inline CommandResult cmd_simulate(const RunConfig& cfg) {
  validate_config(cfg);
  const ExactTailDistribution dist = cfg.family.distribution();
  const auto samples = sample_exact_tail(dist, RngSpec{cfg.seed, 0}, static_cast<std::size_t>(cfg.samples));
  CsvReport csv(cfg);
  if (cfg.u_grid.empty()) {
    csv.columns({"index", "value"});
    for (std::size_t i = 0; i < samples.size(); ++i) csv.row_cells({std::to_string(i), format_real(samples[i])});
    return {csv.str(), kExitOk};
  }
  const EmpiricalTail emp(samples, cfg.dkw_alpha);
  csv.comment("dkw_epsilon", emp.epsilon());
  csv.columns({"u", "tail", "lower", "upper", "exact"});
  for (const auto& r : empirical_tail(emp, cfg.u_grid)) csv.row({r.u, r.tail, r.lower, r.upper, dist.survival(r.u)});
  return {csv.str(), kExitOk};
}

/// Dispatches on cfg.command; ConfigError and precondition failures become
/// exit code 2 with the message as output.
inline CommandResult run_command(const RunConfig& cfg, std::string* error = nullptr) {
  try {
    switch (cfg.command) {
      case Command::conjugate: return cmd_conjugate(cfg);
      case Command::norming: return cmd_norming(cfg);
      case Command::bound: return cmd_bound(cfg);
      case Command::verify: return cmd_verify(cfg);
      case Command::mc_cert: return cmd_mc_cert(cfg);
      case Command::simulate: return cmd_simulate(cfg);
    }
  } catch (const ConfigError& e) {
    if (error) *error = std::string("config error: ") + e.what();
  } catch (const DomainError& e) {
    if (error) *error = std::string("domain error: ") + e.what();
  } catch (const ArgumentError& e) {
    if (error) *error = std::string("argument error: ") + e.what();
  } catch (const CapabilityError& e) {
    if (error) *error = std::string("capability error: ") + e.what();
  }
  return {"", kExitConfig};
}

}  // namespace extremal

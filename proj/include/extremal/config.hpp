#pragma once

// Run configuration: a line-oriented `key = value` format with [section]
// headers, canonical emission (17 significant digits) and validation.
//
//   [run]
//   command = norming
//   seed = 7
//   [family]
//   tag = power
//   m = 2
//   [grid]
//   n = e^2, e^9
//   u = 1, 2, 3
//
// List entries accept `e^X` as shorthand for exp(X).

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "extremal/errors.hpp"
#include "extremal/heavy_tails.hpp"
#include "extremal/sim_harness.hpp"
#include "extremal/tail_calculus.hpp"

namespace extremal {

enum class Command { conjugate, norming, bound, verify, mc_cert, simulate };
enum class FamilyTag { power, power_log, exponential, pareto, beta_gamma_L };

inline constexpr std::array<std::pair<Command, std::string_view>, 6> kCommandNames{{
    {Command::conjugate, "conjugate"},
    {Command::norming, "norming"},
    {Command::bound, "bound"},
    {Command::verify, "verify"},
    {Command::mc_cert, "mc-cert"},
    {Command::simulate, "simulate"},
}};

inline constexpr std::array<std::pair<FamilyTag, std::string_view>, 5> kFamilyNames{{
    {FamilyTag::power, "power"},
    {FamilyTag::power_log, "power-log"},
    {FamilyTag::exponential, "exponential"},
    {FamilyTag::pareto, "pareto"},
    {FamilyTag::beta_gamma_L, "beta-gamma-L"},
}};

inline std::string_view to_string(Command c) {
  for (const auto& [k, v] : kCommandNames)
    if (k == c) return v;
  return "?";
}

inline std::string_view to_string(FamilyTag t) {
  for (const auto& [k, v] : kFamilyNames)
    if (k == t) return v;
  return "?";
}

inline Command parse_command(std::string_view s) {
  for (const auto& [k, v] : kCommandNames)
    if (v == s) return k;
  throw ConfigError("run.command", "unknown command '" + std::string(s) + "'");
}

inline FamilyTag parse_family_tag(std::string_view s) {
  for (const auto& [k, v] : kFamilyNames)
    if (v == s) return k;
  throw ConfigError("family.tag", "unknown family tag '" + std::string(s) + "'");
}

/// Required parameter names per family, in canonical emission order.
inline std::vector<std::string> family_parameter_names(FamilyTag t) {
  switch (t) {
    case FamilyTag::power: return {"m"};
    case FamilyTag::power_log: return {"m", "r"};
    case FamilyTag::exponential: return {"C", "s"};
    case FamilyTag::pareto: return {"p"};
    case FamilyTag::beta_gamma_L: return {"beta", "gamma", "r"};
  }
  return {};
}

/// Optional parameters with defaults.
inline std::map<std::string, double> family_optional_parameters(FamilyTag t) {
  if (t == FamilyTag::power) return {{"scale", 0.0}};  // 0 → 1/m
  return {};
}

struct FamilySpec {
  FamilyTag tag = FamilyTag::power;
  std::map<std::string, double> params{{"m", 2.0}};

  double get(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw ConfigError("family." + key, "missing parameter");
    return it->second;
  }

  bool has_young_function() const noexcept {
    return tag == FamilyTag::power || tag == FamilyTag::power_log || tag == FamilyTag::exponential;
  }

  YoungFunction young() const {
    switch (tag) {
      case FamilyTag::power: {
        const double m = get("m");
        const auto it = params.find("scale");
        const double scale = it == params.end() || it->second == 0.0 ? 1.0 / m : it->second;
        return YoungFunction::power(m, scale);
      }
      case FamilyTag::power_log: return YoungFunction::power_log(get("m"), get("r"));
      case FamilyTag::exponential: return YoungFunction::exponential(get("C"), get("s"));
      default: throw ConfigError("family.tag", "family '" + std::string(to_string(tag)) + "' has no Young exponent");
    }
  }

  ExactTailDistribution distribution() const {
    if (tag == FamilyTag::pareto) return ExactTailDistribution::pareto(get("p"));
    return ExactTailDistribution(young());
  }

  HeavyTailSpec heavy() const {
    if (tag == FamilyTag::pareto) return HeavyTailSpec{get("p"), 0.0, SlowlyVaryingL::constant()};
    if (tag == FamilyTag::beta_gamma_L) {
      const double r = get("r");
      return HeavyTailSpec{get("beta"), get("gamma"),
                           r == 0.0 ? SlowlyVaryingL::constant() : SlowlyVaryingL::log_power(r)};
    }
    throw ConfigError("family.tag", "family '" + std::string(to_string(tag)) + "' is not heavy-tailed");
  }

  bool operator==(const FamilySpec&) const = default;
};

struct RunConfig {
  Command command = Command::verify;
  FamilySpec family;
  std::vector<double> n_list;
  std::vector<double> u_grid;
  std::uint64_t seed = 20190101;
  double delta = 0.25;
  std::string output_path;  // empty → stdout

  std::string bound_kind = "rho-upper";
  double beta = 1.0;       // subgaussian norm bound
  double gamma = 0.0;      // lower-bound γ_n; 0 → (ln n)^{-1/4}
  double constant = 1.0;   // Rosenthal-shape constant
  double theta = std::nan("");  // true mean for certification, NaN → unknown
  long replications = 1;
  long n_max = 10000;
  long samples = 100000;
  std::string generator = "gaussian";
  std::string input_path;
  double dkw_alpha = 0.01;
  bool self_test = false;

  bool operator==(const RunConfig& o) const {
    const bool theta_eq = (std::isnan(theta) && std::isnan(o.theta)) || theta == o.theta;
    return command == o.command && family == o.family && n_list == o.n_list && u_grid == o.u_grid &&
           seed == o.seed && delta == o.delta && output_path == o.output_path && bound_kind == o.bound_kind &&
           beta == o.beta && gamma == o.gamma && constant == o.constant && theta_eq &&
           replications == o.replications && n_max == o.n_max && samples == o.samples &&
           generator == o.generator && input_path == o.input_path && dkw_alpha == o.dkw_alpha &&
           self_test == o.self_test;
  }
};

// ---------------------------------------------------------------------------
// Number formatting
// ---------------------------------------------------------------------------

/// Shortest-form-independent output: 17 significant digits, '.' decimal.
inline std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

namespace config_detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_real(const std::string& field, std::string_view text) {
  const std::string t = trim(text);
  if (t == "inf") return kInf;
  if (t == "nan") return std::nan("");
  if (t.size() > 2 && t[0] == 'e' && t[1] == '^') return std::exp(parse_real(field, std::string_view(t).substr(2)));
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError(field, "not a number: '" + t + "'");
  return v;
}

inline long parse_integer(const std::string& field, std::string_view text) {
  const std::string t = trim(text);
  long v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError(field, "not an integer: '" + t + "'");
  return v;
}

inline std::uint64_t parse_u64(const std::string& field, std::string_view text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError(field, "not an unsigned integer: '" + t + "'");
  return v;
}

inline bool parse_bool(const std::string& field, std::string_view text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  throw ConfigError(field, "not a boolean: '" + t + "'");
}

inline std::vector<double> parse_list(const std::string& field, std::string_view text) {
  std::vector<double> out;
  const std::string t = trim(text);
  if (t.empty()) return out;
  std::size_t start = 0;
  while (start <= t.size()) {
    const auto comma = t.find(',', start);
    const auto piece = std::string_view(t).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_real(field, piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += format_real(xs[i]);
  }
  return s;
}

}  // namespace config_detail

/// Applies one `section.key = value` assignment. Used by the file parser and
/// by command-line overrides.
inline void apply_setting(RunConfig& cfg, const std::string& section, const std::string& key,
                          const std::string& value) {
  using namespace config_detail;
  const std::string field = section + "." + key;
  if (section == "run") {
    if (key == "command") cfg.command = parse_command(trim(value));
    else if (key == "seed") cfg.seed = parse_u64(field, value);
    else if (key == "delta") cfg.delta = parse_real(field, value);
    else if (key == "output") cfg.output_path = trim(value);
    else if (key == "bound") cfg.bound_kind = trim(value);
    else if (key == "beta") cfg.beta = parse_real(field, value);
    else if (key == "gamma") cfg.gamma = parse_real(field, value);
    else if (key == "constant") cfg.constant = parse_real(field, value);
    else if (key == "theta") cfg.theta = parse_real(field, value);
    else if (key == "replications") cfg.replications = parse_integer(field, value);
    else if (key == "n_max") cfg.n_max = parse_integer(field, value);
    else if (key == "samples") cfg.samples = parse_integer(field, value);
    else if (key == "generator") cfg.generator = trim(value);
    else if (key == "input") cfg.input_path = trim(value);
    else if (key == "dkw_alpha") cfg.dkw_alpha = parse_real(field, value);
    else if (key == "self_test") cfg.self_test = parse_bool(field, value);
    else throw ConfigError(field, "unknown key");
  } else if (section == "family") {
    if (key == "tag") {
      const FamilyTag tag = parse_family_tag(trim(value));
      if (tag != cfg.family.tag) {
        cfg.family.tag = tag;
        cfg.family.params.clear();
      }
    } else {
      const auto names = family_parameter_names(cfg.family.tag);
      const auto optional = family_optional_parameters(cfg.family.tag);
      if (std::find(names.begin(), names.end(), key) == names.end() && !optional.count(key))
        throw ConfigError(field, "not a parameter of family '" + std::string(to_string(cfg.family.tag)) + "'");
      cfg.family.params[key] = parse_real(field, value);
    }
  } else if (section == "grid") {
    if (key == "n") cfg.n_list = parse_list(field, value);
    else if (key == "u") cfg.u_grid = parse_list(field, value);
    else throw ConfigError(field, "unknown key");
  } else {
    throw ConfigError(section, "unknown section");
  }
}

/// Parses config text over an existing config (file values override it).
inline void parse_config_into(RunConfig& cfg, std::string_view text) {
  using config_detail::trim;
  std::istringstream in{std::string(text)};
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto at = "line " + std::to_string(line_no);
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError(at, "unterminated section header");
      section = trim(std::string_view(body).substr(1, body.size() - 2));
      if (section != "run" && section != "family" && section != "grid")
        throw ConfigError(at, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(at, "expected key = value");
    if (section.empty()) throw ConfigError(at, "setting outside a section");
    try {
      apply_setting(cfg, section, trim(std::string_view(body).substr(0, eq)), body.substr(eq + 1));
    } catch (const ConfigError& e) {
      std::string msg = e.what();
      if (msg.rfind(e.field() + ": ", 0) == 0) msg = msg.substr(e.field().size() + 2);
      throw ConfigError(e.field(), msg + " (" + at + ")");
    }
  }
}

inline RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  parse_config_into(cfg, text);
  return cfg;
}

/// Canonical text; parse_config(emit_config(c)) == c.
inline std::string emit_config(const RunConfig& cfg) {
  using config_detail::join;
  std::ostringstream os;
  os << "[run]\n";
  os << "command = " << to_string(cfg.command) << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "delta = " << format_real(cfg.delta) << "\n";
  os << "output = " << cfg.output_path << "\n";
  os << "bound = " << cfg.bound_kind << "\n";
  os << "beta = " << format_real(cfg.beta) << "\n";
  os << "gamma = " << format_real(cfg.gamma) << "\n";
  os << "constant = " << format_real(cfg.constant) << "\n";
  os << "theta = " << format_real(cfg.theta) << "\n";
  os << "replications = " << cfg.replications << "\n";
  os << "n_max = " << cfg.n_max << "\n";
  os << "samples = " << cfg.samples << "\n";
  os << "generator = " << cfg.generator << "\n";
  os << "input = " << cfg.input_path << "\n";
  os << "dkw_alpha = " << format_real(cfg.dkw_alpha) << "\n";
  os << "self_test = " << (cfg.self_test ? "true" : "false") << "\n";
  os << "[family]\n";
  os << "tag = " << to_string(cfg.family.tag) << "\n";
  for (const auto& [k, v] : cfg.family.params) os << k << " = " << format_real(v) << "\n";
  os << "[grid]\n";
  os << "n = " << join(cfg.n_list) << "\n";
  os << "u = " << join(cfg.u_grid) << "\n";
  return os.str();
}

/// Checks the fields the configured command will consume.
inline void validate_config(const RunConfig& cfg) {
  for (const auto& name : family_parameter_names(cfg.family.tag))
    if (!cfg.family.params.count(name)) throw ConfigError("family." + name, "missing parameter");
  const auto need = [](bool ok, const char* field, const char* msg) {
    if (!ok) throw ConfigError(field, msg);
  };
  switch (cfg.command) {
    case Command::conjugate:
      need(cfg.family.has_young_function(), "family.tag", "conjugate needs power, power-log or exponential");
      need(!cfg.u_grid.empty(), "grid.u", "conjugate needs a u grid");
      for (double u : cfg.u_grid) need(u >= 0.0, "grid.u", "conjugate needs u >= 0");
      break;
    case Command::norming:
      need(cfg.family.has_young_function(), "family.tag", "norming needs power, power-log or exponential");
      need(!cfg.n_list.empty(), "grid.n", "norming needs an n list");
      for (double n : cfg.n_list) need(n >= 3.0, "grid.n", "norming needs n >= 3");
      need(cfg.n_max >= 64, "run.n_max", "n_max must be >= 64");
      break;
    case Command::bound: need(!cfg.u_grid.empty(), "grid.u", "bound needs a u grid"); break;
    case Command::verify:
      need(cfg.family.tag != FamilyTag::beta_gamma_L, "family.tag", "verify supports power, power-log, exponential and pareto");
      need(cfg.dkw_alpha > 0.0 && cfg.dkw_alpha < 1.0, "run.dkw_alpha", "dkw_alpha must lie in (0,1)");
      need(cfg.samples >= 1, "run.samples", "samples must be >= 1");
      break;
    case Command::mc_cert:
      need(cfg.delta > 0.0 && cfg.delta < 0.5, "run.delta", "delta must lie in (0, 1/2)");
      need(cfg.beta > 0.0, "run.beta", "beta must be positive");
      need(cfg.replications >= 1, "run.replications", "replications must be >= 1");
      need(cfg.input_path.empty() ? cfg.n_max >= 2 : true, "run.n_max", "n_max must be >= 2");
      need(cfg.generator == "gaussian" || cfg.generator == "rademacher", "run.generator",
           "generator must be gaussian or rademacher");
      break;
    case Command::simulate:
      need(cfg.family.tag != FamilyTag::beta_gamma_L, "family.tag", "simulate supports exact-tail families");
      need(cfg.samples >= 1, "run.samples", "samples must be >= 1");
      need(cfg.dkw_alpha > 0.0 && cfg.dkw_alpha < 1.0, "run.dkw_alpha", "dkw_alpha must lie in (0,1)");
      break;
  }
}

}  // namespace extremal

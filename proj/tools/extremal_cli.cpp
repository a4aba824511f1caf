// extremal: command-line front end.
//
//   extremal <conjugate|norming|bound|verify|mc-cert|simulate> [--config FILE] [overrides]
//
// Precedence: built-in defaults < EXTREMAL_SEED (seed only) < config file < flags.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "extremal/commands.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::vector<std::string> sets;
  std::string family;
  std::vector<std::string> params;
  std::string n_list, u_grid, output, bound, generator, input;
  std::optional<std::uint64_t> seed;
  std::optional<double> delta, beta, gamma, constant, theta, dkw_alpha;
  std::optional<long> replications, n_max, samples;
  bool self_test = false;
};

void add_flags(CLI::App* sub, Overrides& o) {
  sub->add_option("-c,--config", o.config_path, "config file (key = value with [sections])");
  sub->add_option("--set", o.sets, "section.key=value override, repeatable");
  sub->add_option("--family", o.family, "power | power-log | exponential | pareto | beta-gamma-L");
  sub->add_option("--param", o.params, "family parameter key=value, repeatable");
  sub->add_option("--n", o.n_list, "comma-separated n list (e^X allowed)");
  sub->add_option("--u", o.u_grid, "comma-separated u grid (e^X allowed)");
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--delta", o.delta, "certification level");
  sub->add_option("-o,--output", o.output, "output path (default stdout)");
  sub->add_option("--bound", o.bound, "bound kind for `bound`");
  sub->add_option("--beta", o.beta, "subgaussian norm bound");
  sub->add_option("--gamma", o.gamma, "lower-bound gamma_n (0: default schedule)");
  sub->add_option("--constant", o.constant, "Rosenthal-shape constant");
  sub->add_option("--theta", o.theta, "true mean for sample-file certification");
  sub->add_option("--dkw-alpha", o.dkw_alpha, "DKW confidence parameter");
  sub->add_option("--replications", o.replications, "mc-cert replications");
  sub->add_option("--n-max", o.n_max, "mc-cert stream length / K window limit");
  sub->add_option("--samples", o.samples, "sample count");
  sub->add_option("--generator", o.generator, "gaussian | rademacher");
  sub->add_option("--input", o.input, "mc-cert sample file (one value per line)");
  sub->add_flag("--self-test", o.self_test, "compare against 0.9 x reference instead of the bound (verify must fail)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw extremal::ConfigError("--config", "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

extremal::RunConfig resolve(extremal::Command command, const Overrides& o) {
  using namespace extremal;
  RunConfig cfg;
  if (const char* env = std::getenv("EXTREMAL_SEED"); env && *env)
    cfg.seed = config_detail::parse_u64("EXTREMAL_SEED", env);
  if (!o.config_path.empty()) parse_config_into(cfg, read_file(o.config_path));
  cfg.command = command;

  const auto set = [&](const std::string& section, const std::string& key, const std::string& value) {
    apply_setting(cfg, section, key, value);
  };
  if (!o.family.empty()) set("family", "tag", o.family);
  for (const auto& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--param", "expected key=value, got '" + kv + "'");
    set("family", kv.substr(0, eq), kv.substr(eq + 1));
  }
  for (const auto& s : o.sets) {
    const auto dot = s.find('.');
    const auto eq = s.find('=');
    if (dot == std::string::npos || eq == std::string::npos || dot > eq)
      throw ConfigError("--set", "expected section.key=value, got '" + s + "'");
    set(s.substr(0, dot), s.substr(dot + 1, eq - dot - 1), s.substr(eq + 1));
  }
  if (!o.n_list.empty()) set("grid", "n", o.n_list);
  if (!o.u_grid.empty()) set("grid", "u", o.u_grid);
  if (o.seed) cfg.seed = *o.seed;
  if (o.delta) cfg.delta = *o.delta;
  if (!o.output.empty()) cfg.output_path = o.output;
  if (!o.bound.empty()) cfg.bound_kind = o.bound;
  if (o.beta) cfg.beta = *o.beta;
  if (o.gamma) cfg.gamma = *o.gamma;
  if (o.constant) cfg.constant = *o.constant;
  if (o.theta) cfg.theta = *o.theta;
  if (o.dkw_alpha) cfg.dkw_alpha = *o.dkw_alpha;
  if (o.replications) cfg.replications = *o.replications;
  if (o.n_max) cfg.n_max = *o.n_max;
  if (o.samples) cfg.samples = *o.samples;
  if (!o.generator.empty()) cfg.generator = o.generator;
  if (!o.input.empty()) cfg.input_path = o.input;
  if (o.self_test) cfg.self_test = true;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace extremal;
  CLI::App app{"extremal: tail bounds for maxima and sums, with exact-oracle verification"};
  app.require_subcommand(1);

  Overrides o;
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [cmd, name] : kCommandNames) {
    auto* sub = app.add_subcommand(std::string(name), "");
    add_flags(sub, o);
    subs.emplace_back(sub, cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  Command command = Command::verify;
  for (const auto& [sub, cmd] : subs)
    if (sub->parsed()) command = cmd;

  RunConfig cfg;
  try {
    cfg = resolve(command, o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  std::string error;
  const CommandResult res = run_command(cfg, &error);
  if (res.exit_code == kExitConfig) {
    std::cerr << error << "\n";
    return kExitConfig;
  }
  if (cfg.output_path.empty()) {
    std::cout << res.output;
  } else {
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write '" << cfg.output_path << "'\n";
      return kExitConfig;
    }
    out << res.output;
  }
  if (res.exit_code == kExitViolation && command == Command::verify) {
    const auto j = nlohmann::json::parse(res.output);
    for (const auto& id : j["failing_checks"]) std::cerr << "violation: " << id.get<std::string>() << "\n";
  }
  return res.exit_code;
}

#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "extremal/config.hpp"

using namespace extremal;

namespace {

RunConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 1000);
  RunConfig c;
  c.command = kCommandNames[pick(rng) % kCommandNames.size()].first;
  c.family.tag = kFamilyNames[pick(rng) % kFamilyNames.size()].first;
  c.family.params.clear();
  for (const auto& name : family_parameter_names(c.family.tag)) c.family.params[name] = 1.0 + 5.0 * unit(rng);
  const int nn = pick(rng) % 5;
  for (int i = 0; i < nn; ++i) c.n_list.push_back(std::exp(20.0 * unit(rng)));
  const int nu = pick(rng) % 7;
  for (int i = 0; i < nu; ++i) c.u_grid.push_back(10.0 * unit(rng) - 1.0);
  c.seed = rng();
  c.delta = 0.5 * unit(rng);
  c.output_path = pick(rng) % 2 ? "" : "out/run_" + std::to_string(pick(rng)) + ".csv";
  c.beta = unit(rng) * 3.0;
  c.gamma = unit(rng);
  c.theta = pick(rng) % 2 ? std::nan("") : unit(rng) - 0.5;
  c.replications = 1 + pick(rng);
  c.n_max = 64 + pick(rng);
  c.samples = 1 + pick(rng);
  c.generator = pick(rng) % 2 ? "gaussian" : "rademacher";
  c.dkw_alpha = 0.001 + 0.5 * unit(rng);
  c.self_test = pick(rng) % 2;
  return c;
}

}  // namespace

TEST(Config, ParsesSectionsAndShorthand) {
  const auto c = parse_config(R"(
# comment line
[run]
command = norming   # trailing comment
seed = 7
[family]
tag = power
m = 3
[grid]
n = e^2, e^9, 100
u = 1, 2.5
)");
  EXPECT_EQ(c.command, Command::norming);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.family.tag, FamilyTag::power);
  EXPECT_EQ(c.family.get("m"), 3.0);
  ASSERT_EQ(c.n_list.size(), 3u);
  EXPECT_DOUBLE_EQ(c.n_list[0], std::exp(2.0));
  EXPECT_EQ(c.n_list[2], 100.0);
  EXPECT_EQ(c.u_grid, (std::vector<double>{1.0, 2.5}));
}

TEST(Config, RoundTripIsIdentity) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const RunConfig c = random_config(rng);
    const std::string text = emit_config(c);
    const RunConfig back = parse_config(text);
    EXPECT_TRUE(back == c) << text;
    EXPECT_EQ(emit_config(back), text);
  }
}

TEST(Config, MalformedFamilyTagNamesField) {
  try {
    parse_config("[family]\ntag = cubic\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "family.tag");
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Config, Diagnostics) {
  const auto field_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of("[run]\nseed = -3\n"), "run.seed");
  EXPECT_EQ(field_of("[run]\ndelta = abc\n"), "run.delta");
  EXPECT_EQ(field_of("[run]\ncolour = red\n"), "run.colour");
  EXPECT_EQ(field_of("[grid]\nu = 1, x\n"), "grid.u");
  EXPECT_EQ(field_of("[family]\ntag = pareto\nm = 2\n"), "family.m");
  EXPECT_EQ(field_of("[misc]\n"), "line 1");
  EXPECT_EQ(field_of("seed = 1\n"), "line 1");
  EXPECT_EQ(field_of("[run]\nno equals sign\n"), "line 2");
}

TEST(Config, ValidationAgainstCommandPreconditions) {
  RunConfig c;
  c.command = Command::norming;
  c.n_list = {2.0};
  EXPECT_THROW(validate_config(c), ConfigError);
  c.n_list = {3.0};
  EXPECT_NO_THROW(validate_config(c));

  c.command = Command::mc_cert;
  c.delta = 0.5;
  try {
    validate_config(c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "run.delta");
  }

  c.command = Command::conjugate;
  c.family.tag = FamilyTag::pareto;
  c.family.params = {{"p", 1.0}};
  c.u_grid = {1.0};
  EXPECT_THROW(validate_config(c), ConfigError);

  c.family.tag = FamilyTag::power_log;
  c.family.params = {{"m", 2.0}};
  EXPECT_THROW(validate_config(c), ConfigError);  // r missing
}

TEST(Config, FormatRealRoundTrips) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = d(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    EXPECT_EQ(config_detail::parse_real("x", format_real(x)), x);
  }
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(kInf), "inf");
}

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "extremal/lower_bounds.hpp"
#include "extremal/sim_harness.hpp"

using namespace extremal;

TEST(SampleExactTail, ExponentialMean) {
  const auto xs = sample_exact_tail(ExactTailDistribution(YoungFunction::power(1.0, 1.0)), {1, 0}, 1000000);
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / 1e6;
  EXPECT_NEAR(mean, 1.0, 3.0 / std::sqrt(1e6));
}

TEST(SampleExactTail, QuadraticTailAtOne) {
  const EmpiricalTail emp(sample_exact_tail(ExactTailDistribution(YoungFunction::power(2.0)), {2, 0}, 100000));
  EXPECT_NEAR(emp.tail(1.0), std::exp(-0.5), emp.epsilon());
}

TEST(SampleExactTail, ParetoAtTwo) {
  const EmpiricalTail emp(sample_exact_tail(ExactTailDistribution::pareto(1.0), {3, 0}, 100000));
  EXPECT_NEAR(emp.tail(2.0), 0.5, emp.epsilon());
  EXPECT_GE(emp.sorted_samples().front(), 1.0);
}

TEST(SampleExactTail, Errors) {
  EXPECT_THROW(sample_exact_tail(ExactTailDistribution::pareto(1.0), {}, 0), ArgumentError);
  EXPECT_THROW(ExactTailDistribution::pareto(0.0), ArgumentError);
}

TEST(Reproducibility, IdenticalSpecsGiveIdenticalStreams) {
  const ExactTailDistribution d(YoungFunction::power(2.0));
  EXPECT_EQ(sample_exact_tail(d, {42, 3}, 1000), sample_exact_tail(d, {42, 3}, 1000));
  EXPECT_NE(sample_exact_tail(d, {42, 3}, 1000), sample_exact_tail(d, {42, 4}, 1000));
  EXPECT_NE(sample_exact_tail(d, {43, 3}, 1000), sample_exact_tail(d, {42, 3}, 1000));
  EXPECT_EQ(sample_subgaussian(SubgaussianKind::gaussian, {9, 1}, 999),
            sample_subgaussian(SubgaussianKind::gaussian, {9, 1}, 999));
}

TEST(Reproducibility, FrozenFirstDraws) {
  // mt19937_64's output is fixed by the standard; the seeding hash and the
  // uniform construction are ours, so these values pin the whole chain.
  RandomStream s({0, 0});
  const double u = s.uniform_open();
  EXPECT_GT(u, 0.0);
  EXPECT_LT(u, 1.0);
  RandomStream again({0, 0});
  EXPECT_EQ(again.uniform_open(), u);
  std::mt19937_64 ref(splitmix64(0 ^ splitmix64(0 + 0x632BE59BD9B4E019ULL)));
  EXPECT_EQ(u, (static_cast<double>(ref() >> 11) + 0.5) * 0x1p-53);
}

TEST(ExactMaxTail, Examples) {
  const auto quad = ExactTailDistribution(YoungFunction::power(2.0));
  for (double t : {0.1, 1.0, 3.0}) EXPECT_NEAR(exact_max_tail(quad, 1.0, t), quad.survival(t), 1e-16);
  const double n = 8886111.0;
  const auto norm = norming_homogeneous(YoungFunction::power(2.0), n);
  EXPECT_NEAR(exact_max_tail(quad, n, norm.q + norm.w), 0.30384017158312202, 1e-12);
  EXPECT_NEAR(exact_max_tail(ExactTailDistribution::pareto(1.0), 2.0, 4.0), 7.0 / 16.0, 1e-16);
  EXPECT_THROW(exact_max_tail(quad, 0.5, 1.0), DomainError);
}

TEST(ExactMaxTail, InclusionExclusionAtTwo) {
  const auto d = ExactTailDistribution(YoungFunction::exponential(1.0, 1.0));
  for (double t : numeric::linear_grid(0.01, 3.0, 30)) {
    const double s = d.survival(t);
    EXPECT_NEAR(exact_max_tail(d, 2.0, t), 2.0 * s - s * s, 1e-15);
  }
}

TEST(ExactMaxTail, MatchesSampledMaxima) {
  const auto d = ExactTailDistribution::pareto(2.0);
  const auto direct = sample_exact_max(d, 50.0, {8, 0}, 50000);
  const EmpiricalTail emp(direct);
  for (double t : {2.0, 5.0, 10.0, 20.0}) EXPECT_NEAR(emp.tail(t), exact_max_tail(d, 50.0, t), emp.epsilon());
}

TEST(EmpiricalTail, Examples) {
  const std::vector<double> fives(10, 5.0);
  const EmpiricalTail emp(fives);
  EXPECT_EQ(emp.tail(4.0), 1.0);
  EXPECT_EQ(emp.tail(6.0), 0.0);
  EXPECT_NEAR(dkw_epsilon(10000, 0.01), 0.016276236307187292, 1e-15);
  const auto rows = empirical_tail(emp, {4.0, 6.0});
  EXPECT_EQ(rows[0].upper, 1.0);
  EXPECT_EQ(rows[1].lower, 0.0);
  EXPECT_THROW(EmpiricalTail(std::vector<double>{}), ArgumentError);
}

TEST(EmpiricalTail, EnvelopeCoverageOverReplications) {
  const ExactTailDistribution d(YoungFunction::power(1.0, 1.0));
  const auto grid = numeric::linear_grid(0.0, 6.0, 61);
  int covered = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const EmpiricalTail emp(sample_exact_tail(d, {123, static_cast<std::uint64_t>(r)}, 2000), 0.05);
    bool inside = true;
    for (double u : grid) inside = inside && emp.lower(u) <= d.survival(u) && d.survival(u) <= emp.upper(u);
    covered += inside;
  }
  // DKW: coverage ≥ 0.95; binomial slack of 3 standard deviations
  EXPECT_GE(covered, reps * 0.95 - 3.0 * std::sqrt(reps * 0.05 * 0.95));
}

TEST(VerifyUpper, Examples) {
  const auto nu = YoungFunction::power(2.0);
  const auto norm = norming_homogeneous(nu, 1e3);
  const TailCurve exact([&](double u) { return exact_rho_tail(nu, norm, u); }, 0.0);
  const auto grid = numeric::linear_grid(0.0, 6.0, 50);
  EXPECT_TRUE(verify_upper("rho", [](double u) { return std::exp(-u); }, exact, grid).passed());
  EXPECT_TRUE(verify_upper("self", [&](double u) { return exact(u); }, exact, grid).passed());
  const auto shrunk = verify_upper("shrunk", [&](double u) { return 0.9 * exact(u); }, exact, grid);
  EXPECT_EQ(shrunk.violations.size(), grid.size());
  EXPECT_GT(shrunk.max_gap, 0.0);
  const auto j = shrunk.to_json();
  EXPECT_EQ(j["check_id"], "shrunk");
  EXPECT_EQ(j["grid_size"], 50);
}

TEST(VerifyUpper, EmpiricalUsesLowerEnvelope) {
  const EmpiricalTail emp(std::vector<double>(100, 1.0), 0.01);
  // point estimate 1 above the bound, lower envelope 1 − ε below it
  const double b = 1.0 - 0.5 * emp.epsilon();
  EXPECT_TRUE(verify_upper("env", [b](double) { return b; }, emp, {0.5}).passed());
}

TEST(SampleSubgaussian, RademacherMean) {
  const auto xs = sample_subgaussian(SubgaussianKind::rademacher, {4, 0}, 1000000);
  for (double x : {xs[0], xs[1], xs[2]}) EXPECT_TRUE(x == 1.0 || x == -1.0);
  EXPECT_LE(std::abs(std::accumulate(xs.begin(), xs.end(), 0.0) / 1e6), 4.0 / std::sqrt(1e6));
}

TEST(SampleSubgaussian, GaussianTail) {
  const EmpiricalTail emp(sample_subgaussian(SubgaussianKind::gaussian, {5, 0}, 1000000));
  EXPECT_NEAR(emp.tail(1.96), 0.024997895148220435, emp.epsilon());
  EXPECT_LE(ks_distance(emp, [](double x) { return 1.0 - normal_survival(x); }), emp.epsilon());
}

TEST(SampleSubgaussian, GaussianStability) {
  const int n = 9;
  const std::size_t paths = 100000;
  const auto z = sample_subgaussian(SubgaussianKind::gaussian, {6, 0}, paths * n);
  std::vector<double> s(paths, 0.0);
  for (std::size_t p = 0; p < paths; ++p)
    for (int i = 0; i < n; ++i) s[p] += z[p * n + i] / 3.0;
  const EmpiricalTail emp(s);
  EXPECT_LE(ks_distance(emp, [](double x) { return 1.0 - normal_survival(x); }), emp.epsilon());
}

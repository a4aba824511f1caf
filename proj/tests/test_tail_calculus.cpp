#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "extremal/sim_harness.hpp"
#include "extremal/tail_calculus.hpp"

using namespace extremal;

namespace {

double quad(double l) { return 0.5 * l * l; }

}  // namespace

TEST(Legendre, QuadraticIsSelfConjugate) {
  EXPECT_NEAR(legendre(quad, 3.0, {-kInf, kInf}), 4.5, 1e-9);
  EXPECT_NEAR(legendre(quad, 3.0), 4.5, 1e-9);
}

TEST(Legendre, QuarticMatchesGridOracle) {
  // mpmath grid search over [0, 10], frozen
  EXPECT_NEAR(legendre([](double l) { return std::pow(l, 4) / 4.0; }, 1.0), 0.75, 1e-9);
}

TEST(Legendre, TruncatedDomainAttainsBoundary) {
  EXPECT_NEAR(legendre(quad, 2.0, {0.0, 1.0, false}), 1.5, 1e-9);
  EXPECT_NEAR(legendre(quad, 2.0, {0.0, 1.0, true}), 1.5, 1e-9);
}

TEST(Legendre, LinearGrowthIsInfinite) {
  EXPECT_TRUE(std::isinf(legendre([](double l) { return l; }, 2.0)));
}

TEST(Legendre, PhiOverload) {
  EXPECT_NEAR(legendre(PhiFunction::subgaussian(1.0), 2.0), 2.0, 1e-9);
  EXPECT_NEAR(legendre(PhiFunction::subgaussian(2.0), 2.0), 0.5, 1e-9);
}

TEST(LegendreProperty, DualityForPowerFamilies) {
  for (double a : {1.5, 2.0, 3.0, 4.0}) {
    const double ap = a / (a - 1.0);
    for (double u : numeric::log_grid(0.1, 10.0, 20)) {
      const double got = legendre([a](double l) { return std::pow(l, a) / a; }, u);
      const double want = std::pow(u, ap) / ap;
      EXPECT_NEAR(got / want, 1.0, 1e-6) << "a=" << a << " u=" << u;
    }
  }
}

TEST(LegendreProperty, NondecreasingAndConvex) {
  const auto g = [](double l) { return std::pow(l, 3) / 3.0 + l * l; };
  const auto grid = numeric::linear_grid(0.0, 8.0, 41);
  std::vector<double> v;
  for (double u : grid) v.push_back(legendre(g, u));
  for (std::size_t i = 1; i < v.size(); ++i) EXPECT_GE(v[i], v[i - 1] - 1e-12);
  for (std::size_t i = 1; i + 1 < v.size(); ++i) EXPECT_LE(v[i], 0.5 * (v[i - 1] + v[i + 1]) + 1e-9);
}

TEST(LegendreProperty, OrderReversal) {
  const auto g1 = [](double l) { return 0.5 * l * l; };
  const auto g2 = [](double l) { return 0.5 * l * l + std::pow(l, 4) / 12.0; };
  for (double u : numeric::linear_grid(0.0, 6.0, 25)) EXPECT_GE(legendre(g1, u), legendre(g2, u) - 1e-10);
}

TEST(InverseMonotone, Examples) {
  EXPECT_NEAR(inverse_monotone(quad, 2.0), 2.0, 1e-10);
  EXPECT_NEAR(inverse_monotone([](double x) { return x * x * x / 3.0; }, 9.0), 3.0, 1e-10);
  EXPECT_NEAR(inverse_monotone([](double x) { return x * x * std::log(x); }, kE * kE, 1.0), kE, 1e-10);
}

TEST(InverseMonotone, RoundTripProperty) {
  const auto f = [](double x) { return std::expm1(x) + x * x; };
  for (double x : numeric::log_grid(1e-3, 20.0, 30)) EXPECT_NEAR(inverse_monotone(f, f(x)), x, 1e-10 * std::max(1.0, x));
}

TEST(YoungFunction, FamiliesSatisfyAxioms) {
  EXPECT_TRUE(check_young_invariants(YoungFunction::power(2.0)).holds());
  EXPECT_TRUE(check_young_invariants(YoungFunction::power(1.5)).holds());
  EXPECT_TRUE(check_young_invariants(YoungFunction::power_log(2.0, 1.0)).holds());
  EXPECT_TRUE(check_young_invariants(YoungFunction::exponential(1.0, 1.0)).holds());
  // ln(1+x) is concave with bounded derivative
  EXPECT_FALSE(check_young_invariants(YoungFunction::custom([](double x) { return std::log1p(x); })).holds());
}

TEST(YoungFunction, InverseAndDerivatives) {
  const auto nu = YoungFunction::power(3.0);
  EXPECT_NEAR(nu.inverse(9.0), 3.0, 1e-12);
  EXPECT_NEAR(nu.derivative(2.0), 4.0, 1e-12);
  EXPECT_NEAR(nu.second_derivative(2.0), 4.0, 1e-12);
  const auto c = YoungFunction::custom([](double x) { return x * x; });
  EXPECT_NEAR(c.derivative(3.0), 6.0, 1e-5);
  EXPECT_NEAR(c.inverse(16.0), 4.0, 1e-9);
  EXPECT_FALSE(c.has_second_derivative());
  EXPECT_THROW(c.second_derivative(1.0), CapabilityError);
  EXPECT_THROW(YoungFunction::power(0.5), ArgumentError);
}

TEST(PhiFunction, Invariants) {
  EXPECT_TRUE(phi_invariants_hold(PhiFunction::subgaussian(1.0)));
  EXPECT_TRUE(phi_invariants_hold(PhiFunction::custom([](double l) { return std::log(std::cosh(l)); })));
  EXPECT_FALSE(phi_invariants_hold(PhiFunction::custom([](double l) { return std::abs(l); })));
  const auto trunc = PhiFunction::custom([](double l) { return l * l; }, 1.0);
  EXPECT_TRUE(std::isinf(trunc(2.0)));
}

TEST(GeneratingPsi, Invariants) {
  EXPECT_TRUE(psi_invariants_hold(GeneratingPsi::power(2.0)));
  EXPECT_TRUE(psi_invariants_hold(GeneratingPsi::constant(4.0)));
  EXPECT_FALSE(psi_invariants_hold(GeneratingPsi::custom([](double p) { return p < 2.0 ? 1.0 : 3.0; }, 4.0, true)));
}

TEST(HPsi, Examples) {
  EXPECT_NEAR(h_psi(GeneratingPsi::power(1.0), kE), kE, 1e-12);
  EXPECT_NEAR(h_psi(GeneratingPsi::power(2.0), 4.0), 4.0 * std::log(2.0), 1e-12);
  EXPECT_EQ(h_psi(GeneratingPsi::constant(5.0), 3.0), 0.0);
}

TEST(GlsTailBound, Examples) {
  const double frozen = 0.2568813653134709;  // exp(-e/2)
  EXPECT_NEAR(gls_tail_bound(GeneratingPsi::power(2.0), 1.0, kE), frozen, 1e-8);
  EXPECT_NEAR(gls_tail_bound(GeneratingPsi::power(2.0), 2.0, 2.0 * kE), frozen, 1e-8);
  for (double b : {2.0, 3.5}) EXPECT_NEAR(gls_tail_bound(GeneratingPsi::constant(b), 1.0, kE * kE), std::exp(-2.0 * b), 1e-10);
  EXPECT_THROW(gls_tail_bound(GeneratingPsi::power(2.0), 1.0, 2.0), DomainError);
  EXPECT_THROW(gls_tail_bound(GeneratingPsi::power(2.0), 0.0, 3.0), ArgumentError);
}

TEST(GlsTailBound, NonincreasingAndAtMostOne) {
  for (double m : {1.0, 2.0, 3.0}) {
    const auto psi = GeneratingPsi::power(m);
    double prev = 1.0;
    for (double y : numeric::log_grid(kE, 1e6, 40)) {
      const double b = gls_tail_bound(psi, 1.0, y);
      EXPECT_LE(b, 1.0);
      EXPECT_LE(b, prev + 1e-14);
      prev = b;
    }
  }
}

TEST(MomentsFromTail, Examples) {
  EXPECT_NEAR(moments_from_tail(TailCurve::exponential(1.0), 2.0), std::sqrt(2.0), 1e-8);
  EXPECT_NEAR(moments_from_tail(TailCurve([](double x) { return x < 1.0 ? 1.0 : 0.0; }, 0.0), 3.0), 1.0, 1e-8);
  EXPECT_NEAR(moments_from_tail(TailCurve([](double x) { return std::exp(-0.5 * x * x); }, 0.0), 2.0), std::sqrt(2.0),
              1e-8);
}

TEST(MomentsFromTail, LyapunovMonotone) {
  const auto tail = TailCurve([](double x) { return std::exp(-std::pow(x, 1.5)); }, 0.0);
  double prev = 0.0;
  for (double p : numeric::linear_grid(1.0, 8.0, 15)) {
    const double m = moments_from_tail(tail, p);
    EXPECT_GE(m, prev * (1.0 - 1e-10));
    prev = m;
  }
}

TEST(MomentsFromTail, HeavyTailRejected) {
  EXPECT_THROW(moments_from_tail(TailCurve([](double x) { return x < 1.0 ? 1.0 : 1.0 / (x * x); }, 0.0), 3.0),
               DivergenceError);
}

TEST(GlsNorm, Examples) {
  const auto psi = GeneratingPsi::power(2.0);
  const auto grid = numeric::linear_grid(1.0, 10.0, 19);
  EXPECT_NEAR(gls_norm_from_moments([&](double p) { return psi(p); }, psi, grid), 1.0, 1e-14);
  EXPECT_NEAR(gls_norm_from_moments([&](double p) { return 2.0 * psi(p); }, psi, grid), 2.0, 1e-14);
  // L_3 norm of a standard exponential: Γ(4)^{1/3}
  const double frozen = 1.817120592832139658;
  const auto tail = TailCurve::exponential(1.0);
  EXPECT_NEAR(gls_norm_from_moments([&](double p) { return moments_from_tail(tail, p); }, GeneratingPsi::constant(3.0),
                                    {1.0, 2.0, 3.0}),
              frozen, 1e-8);
}

TEST(NaturalPhi, Examples) {
  const std::vector<double> grid{-2.0, -1.0, 0.0, 1.0, 2.0};
  const auto zero = natural_phi_empirical(std::vector<double>(10, 0.0), grid);
  for (double v : zero.value) EXPECT_EQ(v, 0.0);

  const auto rad = natural_phi_empirical({1.0, -1.0}, grid);
  EXPECT_NEAR(rad.value[3], 0.4337808304830271, 1e-14);  // ln cosh 1

  const auto g = sample_subgaussian(SubgaussianKind::gaussian, {7, 0}, 1000000);
  const auto gp = natural_phi_empirical(g, grid);
  // Var of e^{X} for X~N(0,1) is e(e−1); stderr of ln mean ≈ sqrt((e−1)/N)
  EXPECT_NEAR(gp.value[3], 0.5, 3.0 * std::sqrt((kE - 1.0) / 1e6));
  EXPECT_THROW(natural_phi_empirical(g, {0.0, 1.0}), ArgumentError);
}

TEST(NaturalPhi, LargeLambdaStaysFinite) {
  const auto phi = natural_phi_empirical({800.0, -800.0}, {-1.0, 1.0});
  EXPECT_NEAR(phi.value[1], 800.0 - std::log(2.0), 1e-9);
  EXPECT_NEAR(phi.to_phi()(0.5), 0.5 * (800.0 - std::log(2.0)), 1e-9);
}

TEST(TailCurve, Validity) {
  EXPECT_TRUE(tail_curve_valid_on(TailCurve::exponential(2.0), numeric::linear_grid(0.0, 10.0, 50)));
  EXPECT_FALSE(tail_curve_valid_on(TailCurve([](double x) { return std::sin(x) * 0.5 + 0.5; }, 0.0),
                                   numeric::linear_grid(0.0, 10.0, 50)));
}

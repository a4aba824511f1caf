// Uniform-in-n confidence band for a running mean of Gaussian draws, and
// the Pareto(2) maximum against its regularly varying bound.

#include <cstdio>
#include <vector>

#include "extremal/extremal.hpp"

int main() {
  using namespace extremal;

  const double delta = 0.05;
  const auto xs = sample_subgaussian(SubgaussianKind::gaussian, {7, 0}, 100000);
  const auto rep = mc_certify(xs, 1.0, delta, 0.0);
  std::printf("z_o(%.2f) = %.6f\n", delta, certification_z(delta));
  for (long n : {10L, 100L, 1000L, 10000L, 100000L}) {
    const auto& r = rep.rows[static_cast<std::size_t>(n - 2)];
    std::printf("n=%-7ld theta_n=%+.5f radius=%.5f\n", r.n, r.theta_n, r.radius);
  }
  std::printf("band left at some n: %s\n", rep.any_violation ? "yes" : "no");

  const auto dist = ExactTailDistribution::pareto(2.0);
  const auto L = SlowlyVaryingL::constant();
  const double n = 1e4;
  auto maxima = sample_exact_max(dist, n, {7, 1}, 50000);
  const double U = U_n(2.0, L, n);
  for (double& m : maxima) m /= U;
  const EmpiricalTail emp(maxima);
  std::printf("\nPareto(2), n=%g, U_n=%.3f\n", n, U);
  for (double x : {1.0, 2.0, 4.0, 8.0})
    std::printf("x=%-4g empirical=%.5f (+/- %.5f) bound=%.5f\n", x, emp.tail(x), emp.epsilon(), heavy_max_bound(2.0, L, x));
}

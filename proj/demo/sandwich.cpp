// Maximum of n i.i.d. variables with tail exp(-x^2/2): norming, then the
// lower / exact / upper sandwich for the normed maximum at n = round(e^16).

#include <cmath>
#include <cstdio>

#include "extremal/extremal.hpp"

int main() {
  using namespace extremal;
  const auto nu = YoungFunction::power(2.0);
  for (double n : {10.0, 1e3, 1e6}) {
    const auto norm = norming_homogeneous(nu, n);
    std::printf("n=%-8g q=%.6f w=%.6f z=%.4f\n", n, norm.q, norm.w, norm.z);
  }

  const double n = std::round(std::exp(16.0));
  const auto rows = sandwich(nu, n, 0.5, {1.0, 1.5, 2.0, 3.0, 4.0});
  std::printf("\n%6s %12s %12s %12s\n", "u", "lower", "exact", "e^-u");
  for (const auto& r : rows) std::printf("%6.2f %12.6f %12.6f %12.6f\n", r.u, r.lower, r.exact, r.upper);
}

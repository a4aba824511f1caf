#pragma once

// Bonferroni lower bound for P(ρ_n > u) with independent exact tails
// P(ξ_i > x) = exp(−ν(x)), and the lower/exact/upper sandwich.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <vector>

#include "extremal/errors.hpp"
#include "extremal/max_bounds.hpp"
#include "extremal/numeric.hpp"
#include "extremal/tail_calculus.hpp"

namespace extremal {

/// Solution of 2R = sup_{u∈[0,Θ]} |ν″(q + u w)|, ε = R w², Θ = γ/√ε.
struct LowerBoundWindow {
  double n = 0.0;
  double gamma = 0.0;
  double R = 0.0;
  double eps = 0.0;
  double theta = 0.0;  // +∞ when ε = 0
  int iterations = 0;
};

/// Default γ_n = (ln n)^{−1/4}.
inline double default_gamma(double n) { return std::pow(std::log(n), -0.25); }

namespace detail {

/// ½·sup_{u∈[0,theta]} |ν″(q + u w)|: 1024-point scan, then three 1024-point
/// refinements around the running argmax.
inline double half_sup_second_derivative(const YoungFunction& nu, const MaxNorming& norm, double theta) {
  const auto at = [&](double u) { return std::abs(nu.second_derivative(norm.q + u * norm.w)); };
  double lo = 0.0, hi = theta;
  double best = at(0.0), best_u = 0.0;
  best = std::max(best, at(theta));
  for (int pass = 0; pass < 4; ++pass) {
    const auto grid = numeric::linear_grid(lo, hi, 1024);
    for (double u : grid) {
      const double v = at(u);
      if (v > best) {
        best = v;
        best_u = u;
      }
    }
    const double h = (hi - lo) / 1023.0;
    lo = std::max(0.0, best_u - h);
    hi = std::min(theta, best_u + h);
  }
  return 0.5 * best;
}

}  // namespace detail

/// Solves the circular (R, ε, Θ) system by fixed-point iteration started at
/// Θ⁽⁰⁾ = γ/(w·√(|ν″(q)|/2)); stops at |ΔΘ|/Θ < 1e-8 or after 100 steps.
inline LowerBoundWindow theta_system(const YoungFunction& nu, const MaxNorming& norm, double gamma) {
  if (!nu.has_second_derivative()) throw CapabilityError("theta_system: nu'' is required");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("theta_system: gamma must lie in (0,1]");
  LowerBoundWindow win;
  win.n = norm.n;
  win.gamma = gamma;

  const double start_curv = std::abs(nu.second_derivative(norm.q));
  double theta = start_curv > 0.0 ? gamma / (norm.w * std::sqrt(0.5 * start_curv)) : 1e6;
  for (int it = 1; it <= 100; ++it) {
    win.iterations = it;
    const double R = detail::half_sup_second_derivative(nu, norm, theta);
    if (R == 0.0) {
      win.R = 0.0;
      win.eps = 0.0;
      win.theta = kInf;
      return win;
    }
    const double eps = R * norm.w * norm.w;
    const double next = gamma / std::sqrt(eps);
    const bool done = std::abs(next - theta) <= 1e-8 * next;
    win.R = R;
    win.eps = eps;
    win.theta = next;
    theta = next;
    if (done) return win;
  }
  throw DivergenceError("theta_system: fixed point did not converge in 100 iterations");
}

/// P(ρ_n > u) ≥ e^{−γ²}e^{−u} − e^{−2u} for 1 ≤ u ≤ Θ_n, clamped at 0.
inline double rho_lower_bound(double u, const LowerBoundWindow& win) {
  if (!(u >= 1.0 && u <= win.theta)) throw DomainError("rho_lower_bound: u must lie in [1, Theta_n]");
  return std::max(0.0, std::exp(-win.gamma * win.gamma - u) - std::exp(-2.0 * u));
}

struct SandwichRow {
  double u = 0.0;
  double lower = 0.0;
  double exact = 0.0;
  double upper = 0.0;
  bool pass = false;
};

/// Exact P(ρ_n > u) = 1 − (1 − e^{−ν(q_n + u w_n)})^n for independent exact tails.
inline double exact_rho_tail(const YoungFunction& nu, const MaxNorming& norm, double u) {
  return numeric::max_survival(std::exp(-nu(norm.q + u * norm.w)), norm.n);
}

/// Lower bound, exact value and e^{−u} per grid point; throws PropertyViolation
/// naming the first row where lower ≤ exact ≤ upper fails.
inline std::vector<SandwichRow> sandwich(const YoungFunction& nu, double n, double gamma,
                                         const std::vector<double>& u_grid) {
  if (!(n >= 3.0)) throw DomainError("sandwich: n must be >= 3");
  const MaxNorming norm = norming_homogeneous(nu, n);
  const LowerBoundWindow win = theta_system(nu, norm, gamma);
  std::vector<SandwichRow> rows;
  rows.reserve(u_grid.size());
  for (double u : u_grid) {
    SandwichRow r;
    r.u = u;
    r.lower = rho_lower_bound(u, win);
    r.exact = exact_rho_tail(nu, norm, u);
    r.upper = rho_upper_bound(u);
    r.pass = r.lower <= r.exact && r.exact <= r.upper;
    if (!r.pass) {
      std::ostringstream os;
      os.precision(17);
      os << "sandwich violated at u=" << r.u << ": lower=" << r.lower << " exact=" << r.exact
         << " upper=" << r.upper;
      throw PropertyViolation(os.str());
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace extremal

#pragma once

// Norming sequences (q_n, w_n, z_n) for maxima of sequences with tails
// P(ξ_i > x) ≤ exp(−ν_i(x)), the uniform bound sup_n P(ρ_n > u) ≤ e^{−u},
// preliminary bounds under supermultiplicativity, the convergence exponent K
// and the lower-limit condition check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "extremal/errors.hpp"
#include "extremal/numeric.hpp"
#include "extremal/tail_calculus.hpp"

namespace extremal {

/// Location q_n, scale w_n and rate z_n = q_n / w_n so that
/// max_{i≤n} ξ_i = q_n + w_n·ρ_n with P(ρ_n > u) ≤ e^{−u}.
struct MaxNorming {
  double n = 0.0;
  double q = 0.0;
  double w = 0.0;
  double z = 0.0;
};

/// q_n = ν^{-1}(ln n), w_n = 1/ν′(q_n), z_n = q_n·ν′(q_n). Requires n ≥ 3.
inline MaxNorming norming_homogeneous(const YoungFunction& nu, double n) {
  if (!(n >= 3.0)) throw DomainError("norming_homogeneous: n must be >= 3");
  const double q = nu.inverse(std::log(n));
  const double slope = nu.derivative(q);
  if (!(slope > 0.0)) throw DomainError("norming_homogeneous: nu' vanishes at q_n");
  return MaxNorming{n, q, 1.0 / slope, q * slope};
}

struct HeteroTailFamily {
  std::vector<YoungFunction> nu;
};

/// How the scale is derived from the slopes ν′_i(q_n).
enum class HeteroScale {
  /// w_n = 1/min_i ν′_i(q_n): keeps P(ρ_n > u) ≤ e^{−u} and reduces to the
  /// homogeneous scale for identical entries.
  min_derivative,
  /// w_n = 1/Σ_i ν′_i(q_n) as literally written for the heterogeneous case.
  derivative_sum,
};

/// q_n solves Σ_{i≤n} exp(−ν_i(q)) = 1 (unique positive root).
inline MaxNorming norming_heterogeneous(const HeteroTailFamily& family, std::size_t n,
                                        HeteroScale rule = HeteroScale::min_derivative) {
  if (n < 1) throw DomainError("norming_heterogeneous: n must be >= 1");
  if (family.nu.size() < n) throw ArgumentError("norming_heterogeneous: family shorter than n");
  const auto mass = [&](double q) {
    numeric::KahanSum s;
    for (std::size_t i = 0; i < n; ++i) s.add(std::exp(-family.nu[i](q)));
    return s.value();
  };
  double q = 0.0;
  if (n > 1) {
    // mass is decreasing; solve −mass(q) = −1.
    q = numeric::solve_increasing([&](double x) { return -mass(x); }, -1.0, 0.0, 1e-12,
                                  "norming_heterogeneous");
  }
  double slope = 0.0;
  if (rule == HeteroScale::derivative_sum) {
    for (std::size_t i = 0; i < n; ++i) slope += family.nu[i].derivative(q);
  } else {
    slope = kInf;
    for (std::size_t i = 0; i < n; ++i) slope = std::min(slope, family.nu[i].derivative(q));
  }
  if (!(slope > 0.0)) throw DomainError("norming_heterogeneous: zero slope at q_n");
  const double w = 1.0 / slope;
  return MaxNorming{static_cast<double>(n), q, w, q / w};
}

/// sup_{n≥3} P(ρ_n > u) ≤ e^{−u}.
inline double rho_upper_bound(double u) {
  if (!(u >= 0.0)) throw DomainError("rho_upper_bound: u must be >= 0");
  return std::exp(-u);
}

struct PreliminaryBounds {
  double p_n = 1.0;     // P(ξ_n / ν^{-1}(n) > u)
  double p_bar = 1.0;   // P(sup_{i≥k₁} ξ_i / ν^{-1}(i) > u)
  double p_plus = 1.0;  // sup_n P(max_{k₁≤i≤k₁+n} ξ_i / ν^{-1}(n) > u)
  double log_p_n = 0.0, log_p_bar = 0.0, log_p_plus = 0.0;  // unclamped logs
  long k1 = 1;
  double u2 = 0.0;
};

/// k₁ = min{m ≥ 1 integer : m ≥ ν(u₁)}.
inline long k1_index(const YoungFunction& nu, double u1) {
  return std::max(1L, static_cast<long>(std::ceil(nu(u1) - 1e-12)));
}

/// Bounds for ν supermultiplicative above u1. Requires u > u₂ = max(ν^{-1}(1), u1)
/// and n ≥ k₁.
inline PreliminaryBounds preliminary_bounds(const YoungFunction& nu, double u1, long n, double u) {
  PreliminaryBounds out;
  out.k1 = k1_index(nu, u1);
  out.u2 = std::max(nu.inverse(1.0), u1);
  if (!(u > out.u2)) throw DomainError("preliminary_bounds: u must exceed u2 = max(nu^{-1}(1), u1)");
  if (n < out.k1) throw DomainError("preliminary_bounds: n must be >= k1");
  const double nu_u = nu(u);
  out.log_p_n = -static_cast<double>(n) * nu_u;
  out.log_p_bar = -std::log1p(-std::exp(-1.0)) - static_cast<double>(out.k1) * nu_u;
  out.log_p_plus = -nu_u;
  out.p_n = std::min(1.0, std::exp(out.log_p_n));
  out.p_bar = std::min(1.0, std::exp(out.log_p_bar));
  out.p_plus = std::min(1.0, std::exp(out.log_p_plus));
  return out;
}

struct SupermultReport {
  bool holds = false;
  double u1_estimate = kInf;
};

/// Scans grid pairs for ν(ab) ≥ ν(a)ν(b). u1_estimate is the smallest grid
/// point above every violation (0 when none occur); `holds` is false when
/// violations reach the top decade of the grid. A falsifier, not a prover.
inline SupermultReport supermult_check(const YoungFunction& nu, const std::vector<double>& grid) {
  if (grid.empty()) throw ArgumentError("supermult_check: empty grid");
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = nu(grid[i]);
  std::optional<std::size_t> worst;  // largest min-index among violating pairs
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) {
      const double lhs = nu(grid[i] * grid[j]);
      const double rhs = vals[i] * vals[j];
      if (lhs < rhs * (1.0 - 1e-12) - 1e-300) worst = std::max(worst.value_or(0), i);
    }
  }
  SupermultReport rep;
  if (!worst) {
    rep.holds = true;
    rep.u1_estimate = 0.0;
    return rep;
  }
  const double top_decade = grid.back() / 10.0;
  rep.holds = grid[*worst] < top_decade;
  rep.u1_estimate = *worst + 1 < grid.size() ? grid[*worst + 1] : kInf;
  return rep;
}

/// The rate sequence z_n fed to the convergence exponent.
class RateSequence {
 public:
  /// z_n = m·ln n; K is exactly 1/m.
  static RateSequence log_linear(double m) {
    if (!(m > 0.0)) throw ArgumentError("log-linear rate needs m > 0");
    RateSequence r;
    r.z_ = [m](double n) { return m * std::log(n); };
    r.log_coefficient_ = m;
    return r;
  }
  static RateSequence custom(std::function<double(double)> z) {
    RateSequence r;
    r.z_ = std::move(z);
    return r;
  }

  double operator()(double n) const { return z_(n); }
  std::optional<double> log_coefficient() const noexcept { return log_coefficient_; }

 private:
  std::function<double(double)> z_;
  std::optional<double> log_coefficient_;
};

/// K = inf{Y > 0 : Σ exp(−(Y+ε) z_n) < ∞ ∀ε > 0}, estimated as the
/// convergence exponent limsup (ln n)/z_n: the sup of the ratio over dyadic
/// windows [2^k, 2^{k+1}) up to N_max, linearly extrapolated in 1/ln n from the
/// last two windows. Exact 1/m for a log-linear tag; +∞ when z stops growing.
inline double K_constant(const RateSequence& z, long n_max) {
  if (auto m = z.log_coefficient()) return 1.0 / *m;
  if (n_max < 16) throw ArgumentError("K_constant: N_max must be >= 16");
  struct Window {
    double ratio = -kInf;
    double z_top = -kInf;
    double t = 0.0;  // 1 / ln(right end)
  };
  std::vector<Window> windows;
  for (long lo = 4; lo <= n_max; lo *= 2) {
    const long hi = std::min(2 * lo - 1, n_max);
    Window w;
    for (long n = lo; n <= hi; ++n) {
      const double zn = z(static_cast<double>(n));
      if (!(zn > 0.0)) return kInf;
      w.ratio = std::max(w.ratio, std::log(static_cast<double>(n)) / zn);
      w.z_top = std::max(w.z_top, zn);
    }
    w.t = 1.0 / std::log(static_cast<double>(hi));
    windows.push_back(w);
    if (hi == n_max) break;
  }
  if (windows.size() < 3) throw ArgumentError("K_constant: N_max too small for three windows");
  const auto& last = windows.back();
  const auto& prev = windows[windows.size() - 2];
  const auto& prev2 = windows[windows.size() - 3];
  if (!(last.z_top > prev.z_top) || !(prev.z_top > prev2.z_top)) return kInf;
  const double slope = (prev.ratio - last.ratio) / (prev.t - last.t);
  const double extrapolated = last.ratio - slope * last.t;
  return std::max(0.0, extrapolated);
}

/// limsup ξ̄_n / q_n ≤ 1 + K (almost surely); reporting convenience.
inline double limsup_bound(double K) { return std::isfinite(K) ? 1.0 + K : kInf; }

struct LiminfConditionReport {
  bool holds = false;
  double eps1_estimate = 0.0;        // min over ε of the admissible ε₁
  std::vector<double> eps1_per_eps;  // largest ε₁ per grid ε
};

/// Checks ν(A(1−ε)) ≤ (1−ε₁)·ν(A) for A on the grid: per ε the largest ε₁ is
/// 1 − max_A ν(A(1−ε))/ν(A). Holds when every ε admits some ε₁ > 0; then
/// limsup ξ̄_n / q_n ≥ 1 for independent sequences with exact tails.
inline LiminfConditionReport liminf_condition_check(const YoungFunction& nu, const std::vector<double>& eps_grid,
                                                    const std::vector<double>& A_grid) {
  if (eps_grid.empty() || A_grid.empty()) throw ArgumentError("liminf_condition_check: empty grid");
  LiminfConditionReport rep;
  rep.eps1_estimate = 1.0;
  for (double eps : eps_grid) {
    if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("liminf_condition_check: eps must lie in (0,1)");
    double worst = 0.0;
    for (double A : A_grid) worst = std::max(worst, nu(A * (1.0 - eps)) / nu(A));
    const double eps1 = 1.0 - worst;
    rep.eps1_per_eps.push_back(eps1);
    rep.eps1_estimate = std::min(rep.eps1_estimate, eps1);
  }
  rep.holds = rep.eps1_estimate > 0.0;
  return rep;
}

}  // namespace extremal

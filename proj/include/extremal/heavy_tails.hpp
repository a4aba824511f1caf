#pragma once

// Polynomially decaying tails: Pisier-type maximum bound and its Bonferroni
// counterpart, slowly varying L and its envelope M_L, the norming roots U(n),
// the sum norming d(n), ψ^{(β,γ,L)}, the majorant characteristic bound and
// the Rosenthal-shaped tail of normalised sums.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "extremal/errors.hpp"
#include "extremal/numeric.hpp"
#include "extremal/tail_calculus.hpp"

namespace extremal {

enum class SlowlyVaryingFamily { constant, log_power, custom };

/// Positive slowly varying L on [1, ∞).
class SlowlyVaryingL {
 public:
  static SlowlyVaryingL constant(double c = 1.0) {
    if (!(c > 0.0)) throw ArgumentError("constant L must be positive");
    SlowlyVaryingL l;
    l.family_ = SlowlyVaryingFamily::constant;
    l.param_ = c;
    l.eval_ = [c](double) { return c; };
    return l;
  }

  /// L(x) = ln^r(e·x).
  static SlowlyVaryingL log_power(double r) {
    SlowlyVaryingL l;
    l.family_ = SlowlyVaryingFamily::log_power;
    l.param_ = r;
    l.eval_ = [r](double x) { return std::pow(1.0 + std::log(x), r); };
    return l;
  }

  static SlowlyVaryingL custom(ScalarMap eval) {
    if (!eval) throw ArgumentError("custom L needs an evaluator");
    SlowlyVaryingL l;
    l.eval_ = std::move(eval);
    return l;
  }

  double operator()(double x) const {
    const double v = eval_(x);
    if (!(v > 0.0)) throw DomainError("slowly varying L must be positive");
    return v;
  }

  SlowlyVaryingFamily family() const noexcept { return family_; }
  double param() const noexcept { return param_; }

 private:
  SlowlyVaryingL() = default;

  SlowlyVaryingFamily family_ = SlowlyVaryingFamily::custom;
  double param_ = 0.0;
  ScalarMap eval_;
};

/// L(2x)/L(x) within `tol` of 1 at x = 2^40, after positivity on a doubling grid.
inline bool slowly_varying_check(const SlowlyVaryingL& L, double tol = 0.05) {
  double x = 1.0;
  for (int k = 0; k <= 40; ++k, x *= 2.0)
    if (!(L(x) > 0.0)) return false;
  const double far = std::ldexp(1.0, 40);
  return std::abs(L(2.0 * far) / L(far) - 1.0) <= tol;
}

struct HeavyTailSpec {
  double exponent = 2.0;  // α (maxima) or β (sums, must exceed 2)
  double gamma = 0.0;     // log exponent
  SlowlyVaryingL L = SlowlyVaryingL::constant();
};

/// T^{(β,γ,L)}(x) = x^{−β}(ln x)^γ L(ln x), x ≥ e.
inline double heavy_tail_shape(const HeavyTailSpec& spec, double x) {
  if (!(x >= kE)) throw DomainError("heavy tail shape is defined for x >= e");
  const double lx = std::log(x);
  return std::pow(x, -spec.exponent) * std::pow(lx, spec.gamma) * spec.L(lx);
}

/// sup_n P(n^{−1/p} max_{i≤n} ξ_i > u) ≤ u^{−p} for u ≥ 1 when all tails are ≤ x^{−p}.
inline double pisier_bound(double p, double u) {
  if (!(p > 0.0)) throw ArgumentError("pisier_bound: p must be positive");
  if (!(u >= 1.0)) throw DomainError("pisier_bound: u must be >= 1");
  return std::pow(u, -p);
}

/// Bonferroni counterpart for independent exact Pareto tails:
/// P(max ≥ u n^{1/p}) ≥ u^{−p} − ½u^{−2p}(1 − 1/n), asserted for u ≥ 2.
inline double pisier_lower(double p, long n, double u) {
  if (!(p > 0.0)) throw ArgumentError("pisier_lower: p must be positive");
  if (n < 1) throw DomainError("pisier_lower: n must be >= 1");
  if (!(u >= 2.0)) throw DomainError("pisier_lower: u must be >= 2");
  const double a = std::pow(u, -p);
  return a - 0.5 * a * a * (1.0 - 1.0 / static_cast<double>(n));
}

/// Log grid over [1, 2^64] used for black-box envelopes.
inline std::vector<double> default_envelope_grid() { return numeric::log_grid(1.0, std::ldexp(1.0, 64), 4096); }

/// M_L(x) = sup_{z≥1} L(xz)/L(z). Family tags give the exact envelope
/// (constant → 1; ln^r(e·x) → (1 + ln x)^r for r > 0, 1 for r ≤ 0);
/// otherwise a grid supremum, which can only under-estimate.
inline double M_L(const SlowlyVaryingL& L, double x, const std::vector<double>& z_grid) {
  if (!(x >= 1.0)) throw DomainError("M_L: x must be >= 1");
  switch (L.family()) {
    case SlowlyVaryingFamily::constant: return 1.0;
    case SlowlyVaryingFamily::log_power:
      return L.param() > 0.0 ? std::pow(1.0 + std::log(x), L.param()) : 1.0;
    case SlowlyVaryingFamily::custom: break;
  }
  if (z_grid.empty()) throw ArgumentError("M_L: empty z grid");
  double best = 0.0;
  for (double z : z_grid) best = std::max(best, L(x * z) / L(z));
  return best;
}

inline double M_L(const SlowlyVaryingL& L, double x) { return M_L(L, x, default_envelope_grid()); }

/// U(n): root of U^α / L(U) = n, U(1) = 1.
inline double U_n(double alpha, const SlowlyVaryingL& L, double n) {
  if (!(alpha > 0.0)) throw ArgumentError("U_n: alpha must be positive");
  if (!(n >= 1.0)) throw DomainError("U_n: n must be >= 1");
  if (n == 1.0) return 1.0;
  const auto G = [&](double u) { return std::pow(u, alpha) / L(u); };
  double lo = 1.0, hi = 2.0;
  int k = 0;
  while (G(hi) < n) {
    lo = hi;
    hi *= 2.0;
    if (++k > 1000) throw DivergenceError("U_n: bracket not found");
  }
  if (!(G(hi) > G(lo))) throw DivergenceError("U_n: U^alpha/L(U) not increasing on the bracket");
  for (int it = 0; it < 300 && (hi - lo) > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (G(mid) < n ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// sup_n P(max_{i≤n} ξ_i / U(n) > x) ≤ x^{−α} M_L(x) when T_ξ(x) ≤ x^{−α} L(x).
inline double heavy_max_bound(double alpha, const SlowlyVaryingL& L, double x) {
  if (!(x >= 1.0)) throw DomainError("heavy_max_bound: x must be >= 1");
  return std::pow(x, -alpha) * M_L(L, x);
}

/// d(n) = n^{1/β}(ln n)^δ with δ > (2+γ)/β; d(1) = 1.
inline double norming_d(double beta, double gamma, double delta, double n) {
  if (!(beta > 2.0)) throw DomainError("norming_d: beta must exceed 2");
  if (!(delta > (2.0 + gamma) / beta)) throw DomainError("norming_d: delta must exceed (2+gamma)/beta");
  if (n == 1.0) return 1.0;
  if (!(n >= 2.0)) throw DomainError("norming_d: n must be >= 2");
  return std::pow(n, 1.0 / beta) * std::pow(std::log(n), delta);
}

struct SeriesDiagnostics {
  std::vector<double> window_sums;  // Σ over [2^k, 2^{k+1}), k ≥ 1, up to min(N_max, 2^22)
  double power_exponent = 0.0;      // −d ln t / d ln n at the top
  double log_exponent = 0.0;        // −d ln(n t) / d ln ln n at the top
};

struct SeriesVerdict {
  bool converges_estimate = false;
  SeriesDiagnostics diagnostics;
  static constexpr const char* label = "heuristic";
};

/// Heuristic verdict for Σ t(n) < ∞ from the local decay between N_max/2 and
/// N_max (δ₀ = 0.05). Writing t ≈ n^{−1}(ln n)^{−a} locally, the series is
/// declared convergent when a > 1 + δ₀; a pure power n^{−1−c} has a ≈ c·ln n,
/// so any decay faster than n^{−1−δ₀} passes once ln N_max is moderate, while
/// 1/(n ln n) stays at a = 1. Terms that underflow count as convergent.
inline SeriesVerdict series_convergence_check(const std::function<double(double)>& terms, double n_max) {
  constexpr double kDelta0 = 0.05;
  if (!(n_max >= 64.0)) throw ArgumentError("series_convergence_check: N_max must be >= 64");
  SeriesVerdict out;
  const double partial_top = std::min(n_max, std::ldexp(1.0, 22));
  for (double lo = 2.0; lo <= partial_top; lo *= 2.0) {
    numeric::KahanSum s;
    const double hi = std::min(2.0 * lo - 1.0, partial_top);
    for (double n = lo; n <= hi; n += 1.0) s.add(terms(n));
    out.diagnostics.window_sums.push_back(s.value());
  }

  const double n1 = n_max / 2.0, n2 = n_max;
  const double t1 = terms(n1), t2 = terms(n2);
  if (t2 == 0.0 || t1 == 0.0) {
    out.converges_estimate = true;
    out.diagnostics.power_exponent = kInf;
    return out;
  }
  const double power = -std::log(t2 / t1) / std::log(n2 / n1);
  out.diagnostics.power_exponent = power;
  const double lln1 = std::log(std::log(n1)), lln2 = std::log(std::log(n2));
  const double a = -(std::log(n2 * t2) - std::log(n1 * t1)) / (lln2 - lln1);
  out.diagnostics.log_exponent = a;
  out.converges_estimate = power >= 1.0 - kDelta0 && a > 1.0 + kDelta0;
  return out;
}

/// ψ^{(β,γ,L)}(p) = (β − p)^{−(γ+1)/β} L^{1/β}(1/(β − p)), 1 ≤ p < β.
inline double psi_beta_gamma_L(double beta, double gamma, const SlowlyVaryingL& L, double p) {
  if (!(beta > 1.0)) throw ArgumentError("psi_beta_gamma_L: beta must exceed 1");
  if (!(p >= 1.0 && p < beta)) throw DomainError("psi_beta_gamma_L: p must lie in [1, beta)");
  const double gap = beta - p;
  return std::pow(gap, -(gamma + 1.0) / beta) * std::pow(L(1.0 / gap), 1.0 / beta);
}

inline GeneratingPsi make_psi_beta_gamma_L(double beta, double gamma, SlowlyVaryingL L) {
  return GeneratingPsi::custom([beta, gamma, L](double p) { return psi_beta_gamma_L(beta, gamma, L, p); }, beta,
                               false);
}

/// exp(g_*(ln n)) with g(y) = ln ψ(1/y), g_*(x) = inf_{y∈(1/b,1)} (x y + g(y)):
/// the majorant-characteristic bound on ‖max_{i≤n}|ξ_i|‖_{Gψ} for unit-norm ξ_i,
/// up to the unspecified factor C(ψ) (reported as 1).
///
/// A 512-point log-grid scan locates the basin, golden section refines it and
/// both interval ends are compared where g is finite.
inline double majorant_bound(const GeneratingPsi& psi, long n) {
  if (n < 2) throw DomainError("majorant_bound: n must be >= 2");
  const double x = std::log(static_cast<double>(n));
  const double y_lo = std::isfinite(psi.b()) ? 1.0 / psi.b() : 1e-12;
  const auto objective = [&](double y) {
    const double p = 1.0 / y;
    if (!psi.in_domain(p)) return kInf;
    return x * y + std::log(psi(p));
  };
  double best = std::min(objective(1.0), objective(y_lo));
  const auto grid = numeric::log_grid(y_lo * (1.0 + 1e-12), 1.0, 512);
  std::size_t arg = 0;
  double grid_best = kInf;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = objective(grid[i]);
    if (v < grid_best) {
      grid_best = v;
      arg = i;
    }
  }
  if (!std::isfinite(grid_best) && !std::isfinite(best)) throw DivergenceError("majorant_bound: no finite value");
  const double a = grid[arg == 0 ? 0 : arg - 1];
  const double b = grid[std::min(arg + 1, grid.size() - 1)];
  const auto refined = numeric::golden_max([&](double y) { return -objective(y); }, a, b);
  best = std::min({best, grid_best, -refined.second});
  return std::exp(best);
}

/// Shape C·x^{−β}(ln x)^{γ+1}L(ln x) of sup_n P(n^{−1/2}S_n > x) for β > 2.
inline double rosenthal_sum_tail(const HeavyTailSpec& spec, double C, double x) {
  if (!(spec.exponent > 2.0)) throw DomainError("rosenthal_sum_tail: beta must exceed 2");
  if (!(C > 0.0)) throw ArgumentError("rosenthal_sum_tail: C must be positive");
  if (!(x >= kE)) throw DomainError("rosenthal_sum_tail: x must be >= e");
  const double lx = std::log(x);
  return C * std::pow(x, -spec.exponent) * std::pow(lx, spec.gamma + 1.0) * spec.L(lx);
}

}  // namespace extremal

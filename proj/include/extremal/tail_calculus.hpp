#pragma once

// Young-Orlicz function algebra: exponent functions ν and φ, generating
// functions ψ of Grand Lebesgue Spaces, tail curves, Young-Fenchel
// conjugation, monotone inversion and tail <-> moment conversion.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "extremal/errors.hpp"
#include "extremal/numeric.hpp"

namespace extremal {

// ---------------------------------------------------------------------------
// Monotone inversion
// ---------------------------------------------------------------------------

/// Solves f(x) = y for a strictly increasing continuous f on [lo, ∞).
/// Residual target is 1e-12·max(1,|y|); when f is too steep for that to be
/// representable the closest double found by bisection is returned.
inline double inverse_monotone(const ScalarMap& f, double y, double lo = 0.0) {
  const double f0 = f(lo);
  if (std::isnan(y) || y < f0) throw DomainError("inverse_monotone: target below f(lo)");
  if (y == f0) return lo;
  return numeric::solve_increasing(f, y, lo, 1e-12 * std::max(1.0, std::abs(y)), "inverse_monotone");
}

// ---------------------------------------------------------------------------
// YoungFunction ν
// ---------------------------------------------------------------------------

enum class YoungFamily { custom, power, power_log, exponential };

/// Strictly increasing convex ν on [0,∞) with ν(0) = 0, used as a tail
/// exponent P(ξ > x) ≤ exp(−ν(x)).
///
/// Closed-form families carry exact derivatives and inverses:
///   power(m, c)        ν(x) = c·x^m            (c defaults to 1/m)
///   power_log(m, r)    ν(x) = x^m·ln^r(e + x)  (≈ x^m ln^r x for large x)
///   exponential(C, s)  ν(x) = exp(C·x^s) − 1
/// Custom functions fall back to central differences and bisection.
class YoungFunction {
 public:
  static YoungFunction power(double m, double scale) {
    if (!(m >= 1.0)) throw ArgumentError("power family needs m >= 1");
    if (!(scale > 0.0)) throw ArgumentError("power family needs a positive scale");
    YoungFunction f;
    f.family_ = YoungFamily::power;
    f.params_ = {m, scale};
    f.eval_ = [m, scale](double x) { return scale * std::pow(x, m); };
    f.deriv_ = [m, scale](double x) { return m == 1.0 ? scale : scale * m * std::pow(x, m - 1.0); };
    f.deriv2_ = [m, scale](double x) {
      if (m == 1.0) return 0.0;
      if (m == 2.0) return 2.0 * scale;
      return scale * m * (m - 1.0) * std::pow(x, m - 2.0);
    };
    f.inverse_ = [m, scale](double y) { return std::pow(y / scale, 1.0 / m); };
    return f;
  }

  static YoungFunction power(double m) { return power(m, 1.0 / m); }

  static YoungFunction power_log(double m, double r) {
    if (!(m >= 1.0)) throw ArgumentError("power-log family needs m >= 1");
    if (!(r >= 0.0)) throw ArgumentError("power-log family needs r >= 0");
    YoungFunction f;
    f.family_ = YoungFamily::power_log;
    f.params_ = {m, r};
    f.eval_ = [m, r](double x) { return std::pow(x, m) * std::pow(std::log(kE + x), r); };
    f.deriv_ = [m, r](double x) {
      const double l = std::log(kE + x);
      const double lead = m == 1.0 ? 1.0 : m * std::pow(x, m - 1.0);
      return lead * std::pow(l, r) + r * std::pow(x, m) * std::pow(l, r - 1.0) / (kE + x);
    };
    f.deriv2_ = [m, r](double x) {
      const double l = std::log(kE + x), ex = kE + x;
      double out = 0.0;
      if (m != 1.0) out += m * (m - 1.0) * std::pow(x, m - 2.0) * std::pow(l, r);
      const double lead = m == 1.0 ? 1.0 : m * std::pow(x, m - 1.0);
      out += 2.0 * lead * r * std::pow(l, r - 1.0) / ex;
      if (r != 0.0)
        out += r * std::pow(x, m) * ((r - 1.0) * std::pow(l, r - 2.0) - std::pow(l, r - 1.0)) / (ex * ex);
      return out;
    };
    return f;
  }

  static YoungFunction exponential(double c, double s) {
    if (!(c > 0.0) || !(s > 0.0)) throw ArgumentError("exponential family needs C > 0 and s > 0");
    YoungFunction f;
    f.family_ = YoungFamily::exponential;
    f.params_ = {c, s};
    f.eval_ = [c, s](double x) { return std::expm1(c * std::pow(x, s)); };
    f.deriv_ = [c, s](double x) {
      const double lead = s == 1.0 ? c : c * s * std::pow(x, s - 1.0);
      return lead * std::exp(c * std::pow(x, s));
    };
    f.deriv2_ = [c, s](double x) {
      const double e = std::exp(c * std::pow(x, s));
      const double d1 = s == 1.0 ? c : c * s * std::pow(x, s - 1.0);
      const double d2 = s == 1.0 ? 0.0 : c * s * (s - 1.0) * std::pow(x, s - 2.0);
      return e * (d2 + d1 * d1);
    };
    f.inverse_ = [c, s](double y) { return std::pow(std::log1p(y) / c, 1.0 / s); };
    return f;
  }

  /// Black-box ν. `deriv` falls back to central differences; without `deriv2`
  /// second_derivative() throws CapabilityError.
  static YoungFunction custom(ScalarMap eval, ScalarMap deriv = {}, ScalarMap deriv2 = {}) {
    if (!eval) throw ArgumentError("custom Young function needs an evaluator");
    YoungFunction f;
    f.family_ = YoungFamily::custom;
    f.eval_ = std::move(eval);
    f.deriv_ = std::move(deriv);
    f.deriv2_ = std::move(deriv2);
    return f;
  }

  double operator()(double x) const { return eval_(x); }

  double derivative(double x) const {
    if (deriv_) return deriv_(x);
    const double h = 1e-6 * std::max(1.0, std::abs(x));
    if (x < h) return (eval_(x + h) - eval_(x)) / h;
    return (eval_(x + h) - eval_(x - h)) / (2.0 * h);
  }

  bool has_second_derivative() const noexcept { return static_cast<bool>(deriv2_); }

  double second_derivative(double x) const {
    if (!deriv2_) throw CapabilityError("Young function has no second derivative");
    return deriv2_(x);
  }

  /// ν^{-1}(y) for y ≥ 0.
  double inverse(double y) const {
    if (std::isnan(y) || y < 0.0) throw DomainError("Young inverse needs y >= 0");
    if (inverse_) return inverse_(y);
    return inverse_monotone(eval_, y, 0.0);
  }

  YoungFamily family() const noexcept { return family_; }
  const std::vector<double>& params() const noexcept { return params_; }

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (family_) {
      case YoungFamily::power: os << "power(m=" << params_[0] << ",scale=" << params_[1] << ")"; break;
      case YoungFamily::power_log: os << "power-log(m=" << params_[0] << ",r=" << params_[1] << ")"; break;
      case YoungFamily::exponential: os << "exponential(C=" << params_[0] << ",s=" << params_[1] << ")"; break;
      case YoungFamily::custom: os << "custom"; break;
    }
    return os.str();
  }

 private:
  YoungFunction() = default;

  YoungFamily family_ = YoungFamily::custom;
  std::vector<double> params_;
  ScalarMap eval_, deriv_, deriv2_, inverse_;
};

struct YoungInvariantReport {
  bool zero_at_origin = false;
  bool increasing = false;
  bool convex = false;
  bool unbounded = false;
  bool holds() const noexcept { return zero_at_origin && increasing && convex && unbounded; }
};

/// Grid falsifier for the Young-function axioms. `threshold` is the level both
/// ν and ν′ must exceed on the doubling grid.
inline YoungInvariantReport check_young_invariants(const YoungFunction& nu, double threshold = 1e6) {
  YoungInvariantReport rep;
  rep.zero_at_origin = std::abs(nu(0.0)) <= 1e-14;
  const auto grid = numeric::linear_grid(0.0, 20.0, 401);
  rep.increasing = true;
  rep.convex = true;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(nu(grid[i]) > nu(grid[i - 1]))) rep.increasing = false;
    if (!(nu.derivative(grid[i]) > 0.0)) rep.increasing = false;
  }
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double mid = nu(grid[i]);
    const double chord = 0.5 * (nu(grid[i - 1]) + nu(grid[i + 1]));
    if (mid > chord * (1.0 + 1e-12) + 1e-14) rep.convex = false;
  }
  double x = 1.0;
  for (int k = 0; k < 1100 && !rep.unbounded; ++k, x *= 2.0) {
    if (nu(x) > threshold && nu.derivative(x) > threshold) rep.unbounded = true;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// PhiFunction φ
// ---------------------------------------------------------------------------

/// Even convex φ on (−λ₀, λ₀) with φ(0) = φ′(0) = 0 and 0 < φ″(0) < ∞;
/// the MGF exponent of a B(φ) space. Evaluates to +∞ outside the domain.
class PhiFunction {
 public:
  /// φ(λ) = β²λ²/2.
  static PhiFunction subgaussian(double beta = 1.0) {
    if (!(beta > 0.0)) throw ArgumentError("subgaussian phi needs beta > 0");
    PhiFunction f;
    f.eval_ = [b2 = beta * beta](double l) { return 0.5 * b2 * l * l; };
    f.beta_ = beta;
    return f;
  }

  static PhiFunction custom(ScalarMap eval, double lambda0 = kInf) {
    if (!eval) throw ArgumentError("custom phi needs an evaluator");
    if (!(lambda0 > 0.0)) throw ArgumentError("phi domain radius must be positive");
    PhiFunction f;
    f.eval_ = std::move(eval);
    f.lambda0_ = lambda0;
    return f;
  }

  double operator()(double lambda) const {
    if (std::abs(lambda) >= lambda0_) return kInf;
    return eval_(lambda);
  }

  double lambda0() const noexcept { return lambda0_; }
  std::optional<double> subgaussian_beta() const noexcept { return beta_; }

 private:
  PhiFunction() = default;

  ScalarMap eval_;
  double lambda0_ = kInf;
  std::optional<double> beta_;
};

/// Finite-difference check of the Φ-class axioms at 0 plus grid convexity.
inline bool phi_invariants_hold(const PhiFunction& phi) {
  const double h = std::min(1e-3, 0.25 * phi.lambda0());
  const double f0 = phi(0.0), fp = phi(h), fm = phi(-h);
  if (std::abs(f0) > 1e-14) return false;
  if (std::abs(fp - fm) > 1e-9 * std::max(1.0, std::abs(fp))) return false;  // even
  const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
  if (!(d2 > 0.0) || !std::isfinite(d2)) return false;
  // A kink at 0 (φ′(0±) ≠ 0) makes the difference quotient scale like 1/h.
  const double k = 0.5 * h;
  const double d2_half = (phi(k) - 2.0 * f0 + phi(-k)) / (k * k);
  if (std::abs(d2_half - d2) > 0.01 * d2) return false;
  const double hi = std::isfinite(phi.lambda0()) ? 0.999 * phi.lambda0() : 10.0;
  const auto grid = numeric::linear_grid(-hi, hi, 201);
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (phi(grid[i]) > 0.5 * (phi(grid[i - 1]) + phi(grid[i + 1])) * (1.0 + 1e-12) + 1e-14) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// GeneratingPsi ψ
// ---------------------------------------------------------------------------

/// Positive continuous ψ on Dom[ψ] = [1, b) or [1, b].
class GeneratingPsi {
 public:
  /// ψ_m(p) = p^{1/m} on [1, ∞).
  static GeneratingPsi power(double m) {
    if (!(m > 0.0)) throw ArgumentError("psi power family needs m > 0");
    return custom([m](double p) { return std::pow(p, 1.0 / m); }, kInf, false);
  }

  /// ψ ≡ c on [1, b]; the Lebesgue space L_b up to scale.
  static GeneratingPsi constant(double b, bool closed_at_b = true, double c = 1.0) {
    if (!(c > 0.0)) throw ArgumentError("psi constant must be positive");
    return custom([c](double) { return c; }, b, closed_at_b);
  }

  static GeneratingPsi custom(ScalarMap eval, double b, bool closed_at_b) {
    if (!eval) throw ArgumentError("custom psi needs an evaluator");
    if (!(b > 1.0)) throw ArgumentError("psi domain endpoint b must exceed 1");
    GeneratingPsi g;
    g.eval_ = std::move(eval);
    g.b_ = b;
    g.closed_ = closed_at_b && std::isfinite(b);
    return g;
  }

  bool in_domain(double p) const noexcept { return p >= 1.0 && (p < b_ || (closed_ && p == b_)); }

  double operator()(double p) const {
    if (!in_domain(p)) throw DomainError("psi evaluated outside Dom[psi]");
    return eval_(p);
  }

  double b() const noexcept { return b_; }
  bool closed_at_b() const noexcept { return closed_; }

 private:
  GeneratingPsi() = default;

  ScalarMap eval_;
  double b_ = kInf;
  bool closed_ = false;
};

/// Grid check: ψ bounded away from zero and free of jumps larger than `jump_tol`
/// (relative) between consecutive points of a fine grid over the domain.
inline bool psi_invariants_hold(const GeneratingPsi& psi, double jump_tol = 0.05) {
  const double hi = std::isfinite(psi.b()) ? (psi.closed_at_b() ? psi.b() : psi.b() - 1e-6 * psi.b()) : 1e3;
  const auto grid = numeric::log_grid(1.0, hi, 2001);
  double prev = psi(grid[0]);
  double lowest = prev;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = psi(grid[i]);
    if (!std::isfinite(v)) return false;
    lowest = std::min(lowest, v);
    if (std::abs(v - prev) > jump_tol * std::max(std::abs(v), std::abs(prev))) return false;
    prev = v;
  }
  return lowest > 0.0;
}

// ---------------------------------------------------------------------------
// TailCurve
// ---------------------------------------------------------------------------

/// Nonincreasing u ↦ probability in [0,1], valid for u ≥ support_lo.
class TailCurve {
 public:
  TailCurve(ScalarMap eval, double support_lo = 0.0) : eval_(std::move(eval)), support_lo_(support_lo) {
    if (!eval_) throw ArgumentError("tail curve needs an evaluator");
  }

  static TailCurve exponential(double rate = 1.0) {
    return TailCurve([rate](double u) { return u <= 0.0 ? 1.0 : std::exp(-rate * u); });
  }

  /// P(ξ > u) = exp(−ν(u)).
  static TailCurve from_young(const YoungFunction& nu) {
    return TailCurve([nu](double u) { return u <= 0.0 ? 1.0 : std::exp(-nu(u)); });
  }

  double operator()(double u) const { return eval_(u); }
  double support_lo() const noexcept { return support_lo_; }

 private:
  ScalarMap eval_;
  double support_lo_;
};

inline bool tail_curve_valid_on(const TailCurve& t, const std::vector<double>& grid) {
  double prev = 1.0;
  for (double u : grid) {
    const double v = t(u);
    if (!(v >= 0.0 && v <= 1.0) || v > prev) return false;
    prev = v;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Young-Fenchel conjugation
// ---------------------------------------------------------------------------

/// Search domain [lo, hi) (or [lo, hi] when hi_closed) of a conjugation.
struct ConjugateDomain {
  double lo = 0.0;
  double hi = kInf;
  bool hi_closed = false;
};

/// g*(u) = sup_{y ∈ Dom} (y·u − g(y)) for convex g.
///
/// The concave objective is bracketed by doubling and maximised by golden
/// section. A finite upper endpoint is compared by value (for a half-open
/// domain the limit g(hi) is used when finite). Returns +∞ when the objective
/// keeps increasing through 200 doublings.
inline double legendre(const ScalarMap& g, double u, ConjugateDomain dom = {}) {
  if (std::isnan(u)) throw ArgumentError("legendre: u is NaN");
  if (!(dom.lo < dom.hi) && !(dom.lo == dom.hi && dom.hi_closed))
    throw ArgumentError("legendre: empty domain");
  if (!std::isfinite(dom.lo)) {
    // Split at 0 and reflect the left half: sup_{y≤0}(yu − g(y)) = (g∘(−·))*(−u).
    if (dom.lo > 0.0 || dom.hi < 0.0) throw ArgumentError("legendre: infinite lower end needs 0 in the domain");
    const double right = legendre(g, u, ConjugateDomain{0.0, dom.hi, dom.hi_closed});
    const double left = legendre([&g](double y) { return g(-y); }, -u, ConjugateDomain{0.0, kInf, false});
    return std::max(left, right);
  }
  const auto objective = [&](double y) {
    const double gy = g(y);
    if (!std::isfinite(gy)) throw DomainError("legendre: g is not finite at an interior point");
    return y * u - gy;
  };
  const double at_lo = objective(dom.lo);
  if (dom.lo == dom.hi) return at_lo;

  double best = at_lo;
  if (std::isfinite(dom.hi)) {
    const double g_hi = g(dom.hi);
    if (std::isfinite(g_hi)) best = std::max(best, dom.hi * u - g_hi);
    else if (dom.hi_closed) throw DomainError("legendre: g is not finite at the closed endpoint");
    // Interior search stops just short of an open endpoint where g may blow up.
    const double right = std::isfinite(g_hi) ? dom.hi : dom.hi - 1e-12 * std::max(1.0, std::abs(dom.hi));
    best = std::max(best, numeric::golden_max(objective, dom.lo, right).second);
    return best;
  }

  const double step = std::max(1.0, std::abs(dom.lo));
  double prev2 = dom.lo, prev = dom.lo, f_prev = at_lo;
  double offset = step;
  for (int k = 0; k <= 200; ++k, offset *= 2.0) {
    const double y = dom.lo + offset;
    const double fy = objective(y);
    if (fy < f_prev) return std::max(best, numeric::golden_max(objective, prev2, y).second);
    prev2 = prev;
    prev = y;
    f_prev = fy;
  }
  return kInf;
}

/// φ*(u) over λ ∈ [0, λ₀); even φ and u ≥ 0 make the negative half redundant.
inline double legendre(const PhiFunction& phi, double u) {
  if (u < 0.0) throw DomainError("legendre of phi needs u >= 0");
  if (auto beta = phi.subgaussian_beta()) return 0.5 * u * u / (*beta * *beta);
  return legendre([&phi](double l) { return phi(l); }, u, ConjugateDomain{0.0, phi.lambda0(), false});
}

// ---------------------------------------------------------------------------
// GLS machinery
// ---------------------------------------------------------------------------

/// h_ψ(p) = p·ln ψ(p).
inline double h_psi(const GeneratingPsi& psi, double p) { return p * std::log(psi(p)); }

/// Tail bound T_ξ(y) ≤ exp(−h*_ψ(ln(y/‖ξ‖))) for ξ in Gψ with norm `norm`,
/// asserted only for y ≥ e·norm.
inline double gls_tail_bound(const GeneratingPsi& psi, double norm, double y) {
  if (!(norm > 0.0)) throw ArgumentError("gls_tail_bound: norm must be positive");
  if (!(y >= kE * norm)) throw DomainError("gls_tail_bound: needs y >= e*norm");
  const double v = std::log(y / norm);
  const double h_star =
      legendre([&psi](double p) { return h_psi(psi, p); }, v, ConjugateDomain{1.0, psi.b(), psi.closed_at_b()});
  return std::min(1.0, std::exp(-h_star));
}

/// ‖ξ‖_p = (p ∫_0^∞ x^{p−1} T(x) dx)^{1/p}.
///
/// Integrates over dyadic panels [2^k, 2^{k+1}] from 2^{-60} up to the first
/// doubling point where T < 1e-16, then adds a power-law extrapolation of the
/// remaining tail using the local decay exponent at the cut.
inline double moments_from_tail(const TailCurve& tail, double p) {
  if (!(p >= 1.0)) throw DomainError("moments_from_tail: p must be >= 1");
  const ScalarMap integrand = [&](double x) {
    const double t = tail(x);
    if (t == 0.0) return 0.0;
    return p * std::pow(x, p - 1.0) * t;
  };

  double cut = 1.0;
  int doublings = 0;
  while (tail(cut) >= 1e-16) {
    cut *= 2.0;
    if (++doublings > 1000) throw DivergenceError("moments_from_tail: tail never drops below 1e-16");
  }

  std::vector<std::pair<double, double>> panels;
  panels.emplace_back(0.0, std::ldexp(1.0, -60));
  for (int k = -60; k < doublings; ++k) panels.emplace_back(std::ldexp(1.0, k), std::ldexp(1.0, k + 1));

  numeric::AdaptiveSimpson coarse(1e-4, 30);
  double rough = 0.0;
  for (const auto& [a, b] : panels) rough += coarse.integrate(integrand, a, b);
  const double abs_tol = 1e-11 * std::max(rough, 1e-300) / static_cast<double>(panels.size());

  numeric::AdaptiveSimpson fine(1e-10, 60);
  numeric::KahanSum total;
  for (const auto& [a, b] : panels) {
    total.add(fine.integrate_to(integrand, a, b, abs_tol));
    if (!fine.converged()) throw DivergenceError("moments_from_tail: quadrature did not converge");
  }

  const double t_cut = tail(cut);
  if (t_cut > 0.0) {
    const double t_half = tail(0.5 * cut);
    const double exponent = std::log(t_half / t_cut) / std::log(2.0);
    if (!(exponent > p)) throw DivergenceError("moments_from_tail: tail too heavy for this moment");
    total.add(p * std::pow(cut, p) * t_cut / (exponent - p));
  }
  return std::pow(total.value(), 1.0 / p);
}

/// sup_{p ∈ grid} ‖ξ‖_p / ψ(p): a lower estimate of the Gψ norm.
inline double gls_norm_from_moments(const ScalarMap& moment_map, const GeneratingPsi& psi,
                                    const std::vector<double>& p_grid) {
  if (p_grid.empty()) throw ArgumentError("gls_norm_from_moments: empty p grid");
  double best = 0.0;
  for (double p : p_grid) best = std::max(best, moment_map(p) / psi(p));
  return best;
}

/// Empirical natural φ: max over α = ±1 of ln mean exp(αλξ), on a grid.
struct EmpiricalPhi {
  std::vector<double> lambda;
  std::vector<double> value;

  /// Piecewise-linear in |λ| through the nonnegative grid points; +∞ beyond
  /// the largest |λ| with a finite value.
  PhiFunction to_phi() const {
    std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
    for (std::size_t i = 0; i < lambda.size(); ++i)
      if (lambda[i] > 0.0 && std::isfinite(value[i])) pts.emplace_back(lambda[i], value[i]);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.first == b.first; }),
              pts.end());
    if (pts.size() < 2) throw ArgumentError("EmpiricalPhi: need a positive grid point with finite value");
    const double radius = pts.back().first * (1.0 + 1e-15);
    return PhiFunction::custom(
        [pts](double l) {
          const double a = std::abs(l);
          auto it = std::lower_bound(pts.begin(), pts.end(), std::pair{a, -kInf});
          if (it == pts.end()) return pts.back().second;
          if (it->first == a || it == pts.begin()) return it->second;
          const auto& hi = *it;
          const auto& lo = *(it - 1);
          return lo.second + (hi.second - lo.second) * (a - lo.first) / (hi.first - lo.first);
        },
        radius);
  }
};

inline EmpiricalPhi natural_phi_empirical(const std::vector<double>& samples, const std::vector<double>& lambda_grid) {
  if (samples.empty()) throw ArgumentError("natural_phi_empirical: no samples");
  {
    std::vector<double> sorted = lambda_grid;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0, j = sorted.size(); i < j--; ++i)
      if (std::abs(sorted[i] + sorted[j]) > 1e-12 * std::max(1.0, std::abs(sorted[j])))
        throw ArgumentError("natural_phi_empirical: lambda grid must be symmetric about 0");
  }
  const double count = static_cast<double>(samples.size());
  const auto log_mean_exp = [&](double scale) {
    double top = -kInf;
    for (double s : samples) top = std::max(top, scale * s);
    if (!std::isfinite(top)) return kInf;
    numeric::KahanSum acc;
    for (double s : samples) acc.add(std::exp(scale * s - top));
    return top + std::log(acc.value() / count);
  };
  EmpiricalPhi out;
  out.lambda = lambda_grid;
  out.value.reserve(lambda_grid.size());
  for (double l : lambda_grid) {
    const double v = std::max(log_mean_exp(l), log_mean_exp(-l));
    out.value.push_back(std::isfinite(v) ? v : kInf);
  }
  return out;
}

}  // namespace extremal

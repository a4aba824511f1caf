#pragma once

// Scalar numerics shared by every module: bracketing root finders,
// golden-section search, adaptive Simpson quadrature, grids, and
// log-space helpers for probabilities of maxima.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "extremal/errors.hpp"

namespace extremal {

using ScalarMap = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kE = 2.718281828459045235360287471352662498;

namespace numeric {

/// n points spaced evenly in log between lo and hi (both > 0), endpoints included.
inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (!(lo > 0.0) || !(hi >= lo)) throw ArgumentError("log_grid: need 0 < lo <= hi");
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

inline std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  g.back() = hi;
  return g;
}

/// Golden-section maximisation of a unimodal map on [a, b]. Returns (argmax, max).
inline std::pair<double, double> golden_max(const ScalarMap& f, double a, double b,
                                            double rel_tol = 1e-12, int max_iter = 400) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(b - a) <= rel_tol * (std::abs(a) + std::abs(b)) + 1e-300) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

/// Bisection for an increasing map f on [lo, hi] with f(lo) <= y <= f(hi).
/// Stops when |f(x) - y| <= abs_tol or the bracket collapses to adjacent doubles.
inline double bisect_increasing(const ScalarMap& f, double y, double lo, double hi, double abs_tol) {
  double best = lo, best_err = kInf;
  for (int it = 0; it < 2000; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    const double fm = f(mid);
    const double err = std::abs(fm - y);
    if (err < best_err) {
      best = mid;
      best_err = err;
    }
    if (err <= abs_tol) return mid;
    if (!(mid > lo && mid < hi)) break;
    if (fm < y)
      lo = mid;
    else
      hi = mid;
  }
  return best;
}

/// Bracket-doubling then bisection. `lo` must satisfy f(lo) <= y.
inline double solve_increasing(const ScalarMap& f, double y, double lo, double abs_tol,
                               const char* what = "solve_increasing", int max_doublings = 200) {
  double step = std::max(1.0, std::abs(lo));
  double hi = lo + step;
  int k = 0;
  while (f(hi) < y) {
    lo = hi;
    step *= 2.0;
    hi = lo + step;
    if (++k > max_doublings || !std::isfinite(hi))
      throw DivergenceError(std::string(what) + ": bracket not found within " +
                            std::to_string(max_doublings) + " doublings");
  }
  return bisect_increasing(f, y, lo, hi, abs_tol);
}

/// Adaptive Simpson quadrature on [a, b].
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(double rel_tol, int max_depth) : rel_tol_(rel_tol), max_depth_(max_depth) {}

  /// Returns the integral; sets converged() false if any panel hit max_depth.
  double integrate(const ScalarMap& f, double a, double b) {
    return integrate_to(f, a, b, -1.0);
  }

  /// Same, with an absolute error target instead of one relative to the panel.
  double integrate_to(const ScalarMap& f, double a, double b, double abs_tol) {
    converged_ = true;
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = abs_tol > 0.0 ? abs_tol : rel_tol_ * std::max(std::abs(whole), 1e-300);
    return recurse(f, a, b, fa, fm, fb, whole, tol, 0);
  }

  bool converged() const noexcept { return converged_; }

 private:
  double recurse(const ScalarMap& f, double a, double b, double fa, double fm, double fb, double whole,
                 double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= max_depth_) {
      converged_ = false;
      return left + right + delta / 15.0;
    }
    // Floor the tolerance so flat panels far from the mass do not recurse forever.
    if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14 * std::max(1.0, std::abs(m)))
      return left + right + delta / 15.0;
    return recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  double rel_tol_;
  int max_depth_;
  bool converged_ = true;
};

/// P(max of n i.i.d. > t) = 1 - (1 - s)^n for per-variable survival s, in log space.
inline double max_survival(double survival, double n) {
  if (survival <= 0.0) return 0.0;
  if (survival >= 1.0) return 1.0;
  return -std::expm1(n * std::log1p(-survival));
}

/// Kahan-compensated running sum.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const noexcept { return s_; }

 private:
  double s_ = 0.0, c_ = 0.0;
};

inline bool close_rel(double a, double b, double rel) {
  if (a == b) return true;
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace numeric
}  // namespace extremal

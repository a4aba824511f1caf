#pragma once

// Exact-tail samplers, exact maximum oracles, empirical tails with
// Dvoretzky-Kiefer-Wolfowitz envelopes, and the upper-bound verifier.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "extremal/errors.hpp"
#include "extremal/numeric.hpp"
#include "extremal/tail_calculus.hpp"

namespace extremal {

// ---------------------------------------------------------------------------
// Random streams
// ---------------------------------------------------------------------------

/// A (seed, stream) pair naming one reproducible random stream.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// mt19937_64 (bit-exact by the standard) keyed by a splitmix64 hash of the
/// (seed, stream) pair, with uniforms built directly from the raw 64-bit words
/// so that no implementation-defined distribution enters the stream.
class RandomStream {
 public:
  explicit RandomStream(RngSpec spec)
      : engine_(splitmix64(spec.seed ^ splitmix64(spec.stream_id + 0x632BE59BD9B4E019ULL))) {}

  /// Uniform on the open interval (0, 1), resolution 2^{-53}.
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53; }

  /// Standard normal by the Marsaglia polar method (needs only log and sqrt).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double a, b, s;
    do {
      a = 2.0 * uniform_open() - 1.0;
      b = 2.0 * uniform_open() - 1.0;
      s = a * a + b * b;
    } while (s >= 1.0 || s == 0.0);
    const double k = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = b * k;
    has_spare_ = true;
    return a * k;
  }

  /// ±1 with equal probability.
  double rademacher() { return (engine_() >> 63) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// ---------------------------------------------------------------------------
// Exact-tail laws
// ---------------------------------------------------------------------------

/// P(ξ > x) = exp(−ν(x)) for x ≥ 0.
struct ExponentialTail {
  YoungFunction nu;
};

/// P(ξ > x) = x^{−p} for x ≥ 1.
struct ParetoTail {
  double p = 1.0;
};

class ExactTailDistribution {
 public:
  explicit ExactTailDistribution(YoungFunction nu) : law_(ExponentialTail{std::move(nu)}) {}
  static ExactTailDistribution pareto(double p) {
    if (!(p > 0.0)) throw ArgumentError("pareto exponent must be positive");
    return ExactTailDistribution(ParetoTail{p});
  }

  bool is_pareto() const noexcept { return std::holds_alternative<ParetoTail>(law_); }
  double support_lo() const noexcept { return is_pareto() ? 1.0 : 0.0; }

  double survival(double t) const {
    if (const auto* par = std::get_if<ParetoTail>(&law_)) return t <= 1.0 ? 1.0 : std::pow(t, -par->p);
    const auto& nu = std::get<ExponentialTail>(law_).nu;
    return t <= 0.0 ? 1.0 : std::exp(-nu(t));
  }

  double cdf(double t) const {
    if (const auto* par = std::get_if<ParetoTail>(&law_)) return t <= 1.0 ? 0.0 : -std::expm1(-par->p * std::log(t));
    const auto& nu = std::get<ExponentialTail>(law_).nu;
    return t <= 0.0 ? 0.0 : -std::expm1(-nu(t));
  }

  /// Inverse transform of an open-interval uniform: x = ν^{-1}(−ln U) or U^{−1/p}.
  double quantile_of_survival(double u) const {
    if (const auto* par = std::get_if<ParetoTail>(&law_)) return std::pow(u, -1.0 / par->p);
    return std::get<ExponentialTail>(law_).nu.inverse(-std::log(u));
  }

  TailCurve tail_curve() const {
    return TailCurve([self = *this](double t) { return self.survival(t); }, support_lo());
  }

 private:
  explicit ExactTailDistribution(ParetoTail p) : law_(p) {}
  std::variant<ExponentialTail, ParetoTail> law_;
};

inline std::vector<double> sample_exact_tail(const ExactTailDistribution& dist, RngSpec rng, std::size_t count) {
  if (count < 1) throw ArgumentError("sample_exact_tail: count must be >= 1");
  RandomStream stream(rng);
  std::vector<double> out(count);
  for (auto& x : out) x = dist.quantile_of_survival(stream.uniform_open());
  return out;
}

/// Samples of max_{i≤n} ξ_i drawn directly from the law of the maximum,
/// P(max ≤ t) = F(t)^n, i.e. survival S = 1 − V^{1/n} for uniform V.
inline std::vector<double> sample_exact_max(const ExactTailDistribution& dist, double n, RngSpec rng,
                                            std::size_t count) {
  RandomStream stream(rng);
  std::vector<double> out(count);
  for (auto& x : out) {
    const double s = -std::expm1(std::log(stream.uniform_open()) / n);
    x = dist.quantile_of_survival(s);
  }
  return out;
}

enum class SubgaussianKind { gaussian, rademacher };

inline std::vector<double> sample_subgaussian(SubgaussianKind kind, RngSpec rng, std::size_t count) {
  if (count < 1) throw ArgumentError("sample_subgaussian: count must be >= 1");
  RandomStream stream(rng);
  std::vector<double> out(count);
  for (auto& x : out) x = kind == SubgaussianKind::gaussian ? stream.normal() : stream.rademacher();
  return out;
}

/// P(max_{i≤n} ξ_i > t) = 1 − (1 − F̄(t))^n for independent copies, in log space.
inline double exact_max_tail(const ExactTailDistribution& dist, double n, double t) {
  if (!(n >= 1.0)) throw DomainError("exact_max_tail: n must be >= 1");
  return numeric::max_survival(dist.survival(t), n);
}

/// Standard normal survival.
inline double normal_survival(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// ---------------------------------------------------------------------------
// Empirical tails
// ---------------------------------------------------------------------------

/// DKW half-width √(ln(2/α)/(2N)).
inline double dkw_epsilon(std::size_t n, double alpha) {
  if (n == 0) throw ArgumentError("dkw_epsilon: empty sample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("dkw_epsilon: alpha must lie in (0,1)");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

class EmpiricalTail {
 public:
  EmpiricalTail(std::vector<double> samples, double dkw_alpha = 0.01)
      : sorted_(std::move(samples)), alpha_(dkw_alpha) {
    if (sorted_.empty()) throw ArgumentError("EmpiricalTail: no samples");
    std::sort(sorted_.begin(), sorted_.end());
    eps_ = dkw_epsilon(sorted_.size(), alpha_);
  }

  /// Fraction of samples strictly above u.
  double tail(double u) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), u);
    return static_cast<double>(sorted_.end() - it) / static_cast<double>(sorted_.size());
  }
  double lower(double u) const { return std::max(0.0, tail(u) - eps_); }
  double upper(double u) const { return std::min(1.0, tail(u) + eps_); }

  double epsilon() const noexcept { return eps_; }
  double alpha() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return sorted_.size(); }
  const std::vector<double>& sorted_samples() const noexcept { return sorted_; }

 private:
  std::vector<double> sorted_;
  double alpha_;
  double eps_ = 0.0;
};

struct EmpiricalTailRow {
  double u = 0.0;
  double tail = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

inline std::vector<EmpiricalTailRow> empirical_tail(const EmpiricalTail& emp, const std::vector<double>& u_grid) {
  std::vector<EmpiricalTailRow> rows;
  rows.reserve(u_grid.size());
  for (double u : u_grid) rows.push_back({u, emp.tail(u), emp.lower(u), emp.upper(u)});
  return rows;
}

/// sup_x |F_N(x) − F(x)| against a continuous CDF.
inline double ks_distance(const EmpiricalTail& emp, const ScalarMap& cdf) {
  const auto& xs = emp.sorted_samples();
  const double n = static_cast<double>(xs.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    worst = std::max({worst, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// One check's outcome; serialised as {check_id, params, grid_size, violations, max_gap}.
struct VerificationReport {
  std::string check_id;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::size_t grid_size = 0;
  std::vector<double> violations;  // grid points where the bound failed
  double max_gap = -kInf;          // max over the grid of (reference − bound)

  bool passed() const noexcept { return violations.empty(); }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["check_id"] = check_id;
    j["params"] = params;
    j["grid_size"] = grid_size;
    j["violations"] = violations;
    j["max_gap"] = max_gap;
    return j;
  }
};

/// Reference is either an exact curve or an empirical tail whose lower DKW
/// envelope is compared instead of the point estimate.
using Reference = std::variant<TailCurve, EmpiricalTail>;

/// Asserts reference(u) ≤ bound(u) on the grid, with 1e-12 relative slack for
/// exact references. Violations become report rows, never exceptions.
inline VerificationReport verify_upper(std::string check_id, const ScalarMap& bound, const Reference& reference,
                                       const std::vector<double>& u_grid) {
  VerificationReport rep;
  rep.check_id = std::move(check_id);
  rep.grid_size = u_grid.size();
  for (double u : u_grid) {
    const double b = bound(u);
    double ref;
    bool bad;
    if (const auto* exact = std::get_if<TailCurve>(&reference)) {
      ref = (*exact)(u);
      bad = ref > b + 1e-12 * std::abs(b);
    } else {
      ref = std::get<EmpiricalTail>(reference).lower(u);
      bad = ref > b;
    }
    rep.max_gap = std::max(rep.max_gap, ref - b);
    if (bad) rep.violations.push_back(u);
  }
  return rep;
}

}  // namespace extremal

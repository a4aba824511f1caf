#pragma once

// Partial sums of triangular arrays: aggregated MGF exponent χ_n, its
// conjugate κ_n, the resulting tail bound and norming, the uniform Y(z)
// bound for the subgaussian case, and Monte-Carlo confidence bands that
// hold simultaneously for all n.

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

/// Row-wise exponents φ[n,i], 1 ≤ i ≤ n, with E exp(±λ ξ_{n,i}) ≤ exp(φ[n,i](λ)).
class ArrayModel {
 public:
  using BetaMap = std::function<double(long n, long i)>;
  using PhiMap = std::function<PhiFunction(long n, long i)>;

  /// φ[n,i](λ) = β²_{n,i} λ²/2.
  static ArrayModel subgaussian(BetaMap beta) {
    ArrayModel m;
    m.beta_ = std::move(beta);
    return m;
  }

  static ArrayModel subgaussian_iid(double beta = 1.0) {
    return subgaussian([beta](long, long) { return beta; });
  }

  static ArrayModel general(PhiMap phi) {
    ArrayModel m;
    m.phi_ = std::move(phi);
    return m;
  }

  bool is_subgaussian() const noexcept { return static_cast<bool>(beta_); }

  PhiFunction entry(long n, long i) const {
    if (beta_) return PhiFunction::subgaussian(beta_(n, i));
    return phi_(n, i);
  }

  /// Σ_i β²_{n,i} (subgaussian models only).
  double beta_sq_sum(long n) const {
    if (!beta_) throw CapabilityError("beta_sq_sum needs a subgaussian array model");
    numeric::KahanSum s;
    for (long i = 1; i <= n; ++i) {
      const double b = beta_(n, i);
      s.add(b * b);
    }
    return s.value();
  }

  /// Smallest λ₀ across row n.
  double lambda0(long n) const {
    if (beta_) return kInf;
    double l0 = kInf;
    for (long i = 1; i <= n; ++i) l0 = std::min(l0, phi_(n, i).lambda0());
    return l0;
  }

 private:
  ArrayModel() = default;

  BetaMap beta_;
  PhiMap phi_;
};

/// χ_n(λ) = Σ_{i≤n} φ[n,i](λ); +∞ as soon as one entry is +∞.
inline double chi_n(const ArrayModel& model, long n, double lambda) {
  if (n <= 0) return 0.0;
  if (model.is_subgaussian()) return 0.5 * lambda * lambda * model.beta_sq_sum(n);
  numeric::KahanSum s;
  for (long i = 1; i <= n; ++i) {
    const double v = model.entry(n, i)(lambda);
    if (!std::isfinite(v)) return kInf;
    s.add(v);
  }
  return s.value();
}

/// κ_n(u) = χ_n*(u); exactly u²/(2Σβ²) for subgaussian rows.
inline double kappa_n(const ArrayModel& model, long n, double u) {
  if (!(u >= 0.0)) throw DomainError("kappa_n: u must be >= 0");
  if (model.is_subgaussian()) {
    const double s2 = model.beta_sq_sum(n);
    if (s2 == 0.0) return u == 0.0 ? 0.0 : kInf;
    return 0.5 * u * u / s2;
  }
  if (n <= 0) return u == 0.0 ? 0.0 : kInf;
  const double l0 = model.lambda0(n);
  return legendre([&](double l) { return chi_n(model, n, l); }, u, ConjugateDomain{0.0, l0, false});
}

/// P(S_n > u) ≤ min(1, exp(−κ_n(u))).
inline double sum_tail_bound(const ArrayModel& model, long n, double u) {
  return std::min(1.0, std::exp(-kappa_n(model, n, u)));
}

struct ArrayNorming {
  double location = 0.0;  // κ_n^{-1}(ln n)
  double scale = 0.0;     // 1/κ_n′(location)
  double y_n = 0.0;       // location / scale
};

/// Norming of the partial sum: S_n = location + scale·ρ_n, P(ρ_n > u) ≤ e^{−u}.
inline ArrayNorming array_norming(const ArrayModel& model, long n) {
  if (n < 3) throw DomainError("array_norming: n must be >= 3");
  const double target = std::log(static_cast<double>(n));
  ArrayNorming out;
  if (model.is_subgaussian()) {
    const double s2 = model.beta_sq_sum(n);
    const double s = std::sqrt(s2);
    out.location = s * std::sqrt(2.0 * target);
    out.scale = s2 / out.location;
  } else {
    const auto kappa = [&](double u) { return kappa_n(model, n, u); };
    out.location = inverse_monotone(kappa, target, 0.0);
    const double h = 1e-6 * std::max(1.0, out.location);
    const double slope = (kappa(out.location + h) - kappa(out.location - h)) / (2.0 * h);
    if (!(slope > 0.0)) throw DomainError("array_norming: kappa' vanishes at the location");
    out.scale = 1.0 / slope;
  }
  out.y_n = out.location / out.scale;
  return out;
}

/// limsup S̄_n / κ_n^{-1}(ln n) ≤ 1 + L.
inline double array_limsup_bound(double L) { return std::isfinite(L) ? 1.0 + L : kInf; }

/// β̄ = (Σ β_i²)^{1/2}, the subgaussian norm bound of a sum of independent terms.
inline double subgaussian_norm_sum(const std::vector<double>& betas) {
  numeric::KahanSum s;
  for (double b : betas) {
    if (b < 0.0) throw ArgumentError("subgaussian_norm_sum: negative norm");
    s.add(b * b);
  }
  return std::sqrt(s.value());
}

/// Y(z) = P(sup_{n≥2} S̄_n/(β̄_n√(2 ln n)) ≥ 1+z) ≤ 2^{1−2z}.
///
/// Σ_{n≥2} n^{−2z} ≤ 2^{1−2z} fails at z = 1 (the sum is π²/6 − 1 ≈ 0.645),
/// so the bound is only offered for z ≥ 3/2, the range induced by δ < 1/2.
inline double Y_uniform_bound(double z) {
  if (!(z >= 1.5))
    throw DomainError("Y_uniform_bound: valid for z >= 3/2 only (sum_{n>=2} n^{-2z} <= 2^{1-2z} fails at z = 1)");
  return std::exp2(1.0 - 2.0 * z);
}

/// z°(δ) solving 2^{2−2z} = δ.
inline double certification_z(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw DomainError("certification: delta must lie in (0, 1/2)");
  return 1.0 - 0.5 * std::log2(delta);
}

/// Confidence band |θ_n − θ| ≤ β√(2 ln n)/√n·(1 + z°(δ)) for all n ≥ 2 jointly.
struct CertBand {
  double delta = 0.0;
  double z_o = 0.0;
  double beta = 0.0;

  CertBand(double beta_, double delta_) : delta(delta_), z_o(certification_z(delta_)), beta(beta_) {
    if (!(beta_ > 0.0)) throw ArgumentError("CertBand: beta must be positive");
  }

  double radius(long n) const {
    if (n < 2) return kInf;
    const double nd = static_cast<double>(n);
    return beta * std::sqrt(2.0 * std::log(nd)) / std::sqrt(nd) * (1.0 + z_o);
  }
};

struct CertRow {
  long n = 0;
  double theta_n = 0.0;
  double radius = 0.0;
  bool violated = false;
};

/// Single-pass running mean paired with the certification band.
class RunningCertifier {
 public:
  RunningCertifier(CertBand band, std::optional<double> theta = std::nullopt)
      : band_(band), theta_(theta) {}

  CertRow push(double x) {
    ++count_;
    mean_ += (x - mean_) / static_cast<double>(count_);
    CertRow row{count_, mean_, band_.radius(count_), false};
    if (theta_ && count_ >= 2 && std::abs(mean_ - *theta_) > row.radius) {
      row.violated = true;
      ever_violated_ = true;
    }
    return row;
  }

  long count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  bool ever_violated() const noexcept { return ever_violated_; }
  const CertBand& band() const noexcept { return band_; }

 private:
  CertBand band_;
  std::optional<double> theta_;
  long count_ = 0;
  double mean_ = 0.0;
  bool ever_violated_ = false;
};

struct CertReport {
  CertBand band;
  std::vector<CertRow> rows;  // one row per n ≥ 2
  bool any_violation = false;
};

/// Runs the certifier over a sample stream. Violations are flagged only when
/// the true mean θ is supplied.
inline CertReport mc_certify(const std::vector<double>& samples, double beta, double delta,
                             std::optional<double> theta = std::nullopt) {
  RunningCertifier cert(CertBand(beta, delta), theta);
  CertReport rep{cert.band(), {}, false};
  rep.rows.reserve(samples.size());
  for (double x : samples) {
    const CertRow row = cert.push(x);
    if (row.n >= 2) rep.rows.push_back(row);
  }
  rep.any_violation = cert.ever_violated();
  return rep;
}

}  // namespace extremal

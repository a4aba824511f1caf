#pragma once

// The default verification suite run by `extremal verify`: each bound in the
// library checked against an exact oracle or a DKW-enveloped simulation.

#include <cmath>
#include <string>
#include <vector>

#include "extremal/array_sums.hpp"
#include "extremal/config.hpp"
#include "extremal/heavy_tails.hpp"
#include "extremal/lower_bounds.hpp"
#include "extremal/max_bounds.hpp"
#include "extremal/numeric.hpp"
#include "extremal/sim_harness.hpp"

namespace extremal {

namespace verify_detail {

inline std::string tag_n(const std::string& id, double n) { return id + "[n=" + format_real(n) + "]"; }

}  // namespace verify_detail

/// verify_upper, except that the falsification self-test swaps the bound for
/// 0.9 times the compared reference value, so every point with a positive
/// reference must be reported as a violation.
inline VerificationReport check_upper(const RunConfig& cfg, std::string id, const ScalarMap& bound,
                                      const Reference& reference, const std::vector<double>& grid) {
  if (!cfg.self_test) return verify_upper(std::move(id), bound, reference, grid);
  const auto shrunk = [&reference](double u) {
    if (const auto* exact = std::get_if<TailCurve>(&reference)) return 0.9 * (*exact)(u);
    return 0.9 * std::get<EmpiricalTail>(reference).lower(u);
  };
  return verify_upper(std::move(id), shrunk, reference, grid);
}

/// Checks for ν-families: max bound vs exact oracle and simulation, the
/// lower/exact/upper sandwich, the supermultiplicative preliminary bound and
/// the Gaussian partial-sum bound.
inline std::vector<VerificationReport> exponential_suite(const RunConfig& cfg) {
  using verify_detail::tag_n;
  const YoungFunction nu = cfg.family.young();
  const std::vector<double> n_list = cfg.n_list.empty() ? std::vector<double>{10.0, 1e3, 1e6} : cfg.n_list;
  const std::vector<double> u_grid = cfg.u_grid.empty() ? numeric::linear_grid(0.0, 6.0, 50) : cfg.u_grid;
  const auto upper = [](double u) { return rho_upper_bound(u); };
  std::vector<VerificationReport> out;

  for (double n : n_list) {
    const MaxNorming norm = norming_homogeneous(nu, n);
    auto rep = check_upper(cfg, tag_n("rho_upper_exact", n), upper,
                            TailCurve([nu, norm](double u) { return exact_rho_tail(nu, norm, u); }, 0.0), u_grid);
    rep.params = {{"family", std::string(to_string(cfg.family.tag))}, {"n", n}};
    out.push_back(std::move(rep));
  }

  {
    // Simulated maxima of n = 10 exact-tail draws, brute force.
    const double n = 10.0;
    const MaxNorming norm = norming_homogeneous(nu, n);
    const ExactTailDistribution dist(nu);
    const auto draws = sample_exact_tail(dist, RngSpec{cfg.seed, 1}, static_cast<std::size_t>(cfg.samples) * 10);
    std::vector<double> rho(static_cast<std::size_t>(cfg.samples));
    for (std::size_t k = 0; k < rho.size(); ++k) {
      double m = draws[10 * k];
      for (std::size_t i = 1; i < 10; ++i) m = std::max(m, draws[10 * k + i]);
      rho[k] = (m - norm.q) / norm.w;
    }
    auto rep = check_upper(cfg, tag_n("rho_upper_simulated", n), upper, EmpiricalTail(rho, cfg.dkw_alpha), u_grid);
    rep.params = {{"n", n}, {"samples", cfg.samples}, {"dkw_alpha", cfg.dkw_alpha}, {"stream_id", 1}};
    out.push_back(std::move(rep));
  }

  if (nu.has_second_derivative()) {
    const double n = std::round(std::exp(16.0));
    const double gamma = cfg.gamma > 0.0 ? cfg.gamma : default_gamma(n);
    const MaxNorming norm = norming_homogeneous(nu, n);
    const LowerBoundWindow win = theta_system(nu, norm, gamma);
    const double top = std::min(win.theta, 6.0);
    const auto grid = numeric::linear_grid(1.0, top, 25);
    const TailCurve exact([nu, norm](double u) { return exact_rho_tail(nu, norm, u); }, 0.0);
    auto hi = check_upper(cfg, tag_n("sandwich_upper", n), upper, exact, grid);
    auto lo = check_upper(cfg, tag_n("sandwich_lower", n), exact,
                           TailCurve([win](double u) { return rho_lower_bound(u, win); }, 1.0), grid);
    for (auto* rep : {&hi, &lo})
      rep->params = {{"n", n}, {"gamma", gamma}, {"theta", win.theta}, {"R", win.R}, {"eps", win.eps}};
    out.push_back(std::move(hi));
    out.push_back(std::move(lo));
  }

  {
    // P(ξ_n / ν^{-1}(n) > u) = exp(−ν(u ν^{-1}(n))) against exp(−n ν(u)).
    const auto sm = supermult_check(nu, numeric::log_grid(0.05, 50.0, 60));
    if (sm.holds) {
      const long n = 10;
      const double u1 = std::max(sm.u1_estimate, 1e-9);
      const double u2 = std::max(nu.inverse(1.0), u1);
      if (n >= k1_index(nu, u1)) {
        const auto grid = numeric::linear_grid(u2 * 1.001, u2 + 4.0, 30);
        const double scale = nu.inverse(static_cast<double>(n));
        auto rep = check_upper(cfg,
            tag_n("preliminary_p_n", static_cast<double>(n)),
            [&](double u) { return preliminary_bounds(nu, u1, n, u).p_n; },
            TailCurve([nu, scale](double u) { return std::exp(-nu(u * scale)); }, 0.0), grid);
        rep.params = {{"n", n}, {"u1", u1}, {"u2", u2}};
        out.push_back(std::move(rep));
      }
    }
  }
  return out;
}

/// Pareto checks: Pisier's bound and its Bonferroni counterpart against the
/// exact maximum law, and the regularly varying max bound against simulation.
inline std::vector<VerificationReport> pareto_suite(const RunConfig& cfg) {
  using verify_detail::tag_n;
  const double p = cfg.family.get("p");
  const ExactTailDistribution dist = ExactTailDistribution::pareto(p);
  const std::vector<double> n_list = cfg.n_list.empty() ? std::vector<double>{1.0, 2.0, 10.0, 1e3} : cfg.n_list;
  const std::vector<double> u_grid = cfg.u_grid.empty() ? numeric::linear_grid(1.0, 10.0, 50) : cfg.u_grid;
  std::vector<VerificationReport> out;

  for (double n : n_list) {
    const double scale = std::pow(n, 1.0 / p);
    auto rep = check_upper(cfg,
        tag_n("pisier_exact", n), [&](double u) { return pisier_bound(p, u); },
        TailCurve([dist, n, scale](double u) { return exact_max_tail(dist, n, u * scale); }, 1.0), u_grid);
    rep.params = {{"p", p}, {"n", n}};
    out.push_back(std::move(rep));
  }

  {
    const double n = 2.0;
    const double scale = std::pow(n, 1.0 / p);
    const auto grid = numeric::linear_grid(2.0, 10.0, 33);
    auto rep = check_upper(cfg,
        tag_n("pisier_lower_exact", n), [&](double u) { return exact_max_tail(dist, n, u * scale); },
        TailCurve([p](double u) { return pisier_lower(p, 2, u); }, 2.0), grid);
    rep.params = {{"p", p}, {"n", n}};
    out.push_back(std::move(rep));
  }

  const SlowlyVaryingL L = SlowlyVaryingL::constant();
  for (double n : {10.0, 1e3}) {
    const double U = U_n(p, L, n);
    auto maxima = sample_exact_max(dist, n, RngSpec{cfg.seed, 2}, static_cast<std::size_t>(cfg.samples));
    for (double& x : maxima) x /= U;
    auto rep = check_upper(cfg,
        tag_n("heavy_max_simulated", n), [&](double x) { return heavy_max_bound(p, L, x); },
        EmpiricalTail(std::move(maxima), cfg.dkw_alpha), u_grid);
    rep.params = {{"alpha", p}, {"n", n}, {"U_n", U}, {"samples", cfg.samples}, {"stream_id", 2}};
    out.push_back(std::move(rep));
  }
  return out;
}

/// Exact Gaussian partial sums, P(S_n > u) = Φ̄(u/√n), against exp(−κ_n(u)).
inline std::vector<VerificationReport> array_suite(const RunConfig& cfg) {
  const ArrayModel model = ArrayModel::subgaussian_iid(1.0);
  std::vector<VerificationReport> out;
  for (long n : {1L, 10L, 1000L}) {
    const double sd = std::sqrt(static_cast<double>(n));
    const auto grid = numeric::linear_grid(0.0, 6.0 * sd, 40);
    auto rep = check_upper(cfg,
        verify_detail::tag_n("sum_tail_gaussian", static_cast<double>(n)),
        [&](double u) { return sum_tail_bound(model, n, u); },
        TailCurve([sd](double u) { return normal_survival(u / sd); }, 0.0), grid);
    rep.params = {{"beta", 1.0}, {"n", n}};
    out.push_back(std::move(rep));
  }
  return out;
}

inline std::vector<VerificationReport> default_suite(const RunConfig& cfg) {
  auto out = cfg.family.tag == FamilyTag::pareto ? pareto_suite(cfg) : exponential_suite(cfg);
  for (auto& r : array_suite(cfg)) out.push_back(std::move(r));
  return out;
}

}  // namespace extremal

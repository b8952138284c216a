#pragma once

#include <cmath>
#include <cstddef>

#include "snhet/analytic/legit_rates.hpp"
#include "snhet/core_model.hpp"
#include "snhet/geometry.hpp"
#include "snhet/quadrature.hpp"

namespace snhet::analytic {

/// The r-moments behind the Jensen bounds: C1 (near user, case I), D (associated user), C2 (far user, case II).
struct BoundMoments {
  double c1 = 0.0;
  double d = 0.0;
  double c2 = 0.0;
  double abs_error = 0.0;
  bool converged = true;
};

namespace detail {

inline LegitRates bounds_from_moments(const BoundMoments& m, const NomaPowerSplit& split, double power_k) {
  LegitRates out;
  const double a_m = split.a_m, a_n = split.a_n;
  auto lg = [](double snr) { return std::log2(1.0 + snr); };
  if (a_m > 0.0) {
    out.r_m_case1 = lg(1.0 / (2.0 * a_n / a_m + (m.c1 + m.d) / (a_m * power_k)));
    out.r_m_case2 = lg(1.0 / (2.0 * a_n / a_m + (m.c2 + m.d) / (a_m * power_k)));
  }
  // Without a second user only the first user's own moment enters.
  if (a_m > 0.0) out.r_n_case1 = lg(a_n * power_k / m.c1);
  out.r_n_case2 = lg(a_n * power_k / m.d);
  out.abs_error = m.abs_error;
  out.converged = m.converged;
  return out;
}

}  // namespace detail

/// Moments of G(r) = (E[I](r) + sigma^2) r^alpha_k against the serving law of tier k.
inline BoundMoments bound_moments(const NetworkConfig& cfg, std::size_t k, const FirstUserPlacement& placement,
                                  const quad::QuadratureSettings& settings = {}) {
  require_valid(cfg);
  const ServingLaw law(cfg, k, settings);
  const double alpha = cfg.tiers[k].alpha;
  const double noise = cfg.noise_linear;
  auto g = [&](double r) { return (mean_interference(cfg, k, r) + noise) * std::pow(r, alpha); };
  const double hi = law.truncation_radius();
  BoundMoments m;
  auto take = [&](const quad::QuadResult& r) {
    m.abs_error += r.abs_error;
    m.converged = m.converged && r.converged;
    return r.value;
  };

  if (const auto* fixed = std::get_if<FixedPlacement>(&placement)) {
    const double ra = fixed->radius;
    if (!(ra > 0.0) || !std::isfinite(ra)) throw DomainError("fixed first-user radius must be positive and finite");
    auto gf = [&](double r) { return g(r) * law.pdf(r); };
    m.c1 = take(quad::integrate_finite(gf, 0.0, std::min(ra, hi), settings));
    m.d = g(ra);
    m.c2 = ra < hi ? take(quad::integrate_finite(gf, ra, hi, settings)) : 0.0;
  } else {
    m.c1 = take(quad::integrate_finite([&](double r) { return g(r) * law.pdf(r) * law.ccdf(r); }, 0.0, hi, settings));
    m.d = take(quad::integrate_finite([&](double r) { return g(r) * law.pdf(r); }, 0.0, hi, settings));
    m.c2 = take(quad::integrate_finite([&](double r) { return g(r) * law.pdf(r) * law.cdf(r); }, 0.0, hi, settings));
  }
  return m;
}

/// Jensen lower bounds on the four legitimate rates, single-integral form.
inline LegitRates legit_rate_lower_bounds(const NetworkConfig& cfg, std::size_t k, const FirstUserPlacement& placement,
                                          const quad::QuadratureSettings& settings = {}) {
  const auto m = bound_moments(cfg, k, placement, settings);
  return detail::bounds_from_moments(m, effective_split(cfg, k), cfg.tiers[k].power_linear);
}

/// Closed-form bounds for equal path-loss exponents and unbiased association (random first user).
inline LegitRates closed_form_lower_bounds(const NetworkConfig& cfg, std::size_t k) {
  require_valid(cfg);
  const double alpha = cfg.tiers[k].alpha;
  const double bias = cfg.tiers[k].bias;
  for (const auto& t : cfg.tiers)
    if (t.alpha != alpha || t.bias != bias)
      throw PreconditionError("closed-form bounds need equal path-loss exponents and biases in every tier");

  const double pk = cfg.tiers[k].power_linear;
  double e = 0.0;
  for (const auto& t : cfg.tiers) e += pi * t.density * std::pow(t.power_linear / pk, 2.0 / alpha);
  const double a_tilde = cfg.noise_linear * std::tgamma(alpha / 2.0 + 1.0) / (pk * std::pow(2.0 * e, alpha / 2.0));
  const double h = std::pow(2.0, alpha / 2.0);

  const auto split = effective_split(cfg, k);
  const double a_m = split.a_m, a_n = split.a_n;
  auto lg = [](double inv_snr) { return std::log2(1.0 + 1.0 / inv_snr); };
  LegitRates out;
  if (a_m > 0.0) {
    out.r_m_case1 = lg(2.0 * a_n / a_m + (2.5 / (alpha - 2.0) + a_tilde * (1.0 + 2.0 * h) / 2.0) / a_m);
    out.r_m_case2 = lg(2.0 * a_n / a_m + (3.5 / (alpha - 2.0) + a_tilde * (4.0 * h - 1.0) / 2.0) / a_m);
  }
  if (a_m > 0.0) out.r_n_case1 = lg((0.5 / (alpha - 2.0) + a_tilde / 2.0) / a_n);
  out.r_n_case2 = lg((2.0 / (alpha - 2.0) + a_tilde * h) / a_n);
  return out;
}

}  // namespace snhet::analytic

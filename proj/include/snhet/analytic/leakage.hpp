#pragma once

#include <cmath>
#include <cstddef>

#include "snhet/analytic/laplace.hpp"
#include "snhet/analytic/legit_rates.hpp"
#include "snhet/core_model.hpp"
#include "snhet/quadrature.hpp"

namespace snhet::analytic {

inline double power_fraction(const NetworkConfig& cfg, std::size_t k, UserRole role) {
  const auto split = effective_split(cfg, k);
  return role == UserRole::Far ? split.a_m : split.a_n;
}

/// Ergodic rate of the strongest eavesdropper on the message of `role` in tier k.
inline quad::QuadResult leakage_rate_detail(const NetworkConfig& cfg, std::size_t k, UserRole role,
                                            const quad::QuadratureSettings& settings = {}) {
  require_valid(cfg);
  const double a_w = power_fraction(cfg, k, role);
  if (cfg.eve_density == 0.0 || a_w == 0.0) return {};
  const InterferenceKernel kernel(cfg, k);
  auto inner = settings.tightened(0.1);
  inner.abs_tol = 1e-300;  // J spans many decades; only the relative tolerance is meaningful

  // J(t) = int_0^inf exp{-t s2 r^a/(aP)} L_e(t r^a/(aP)) r dr.
  auto j_of_t = [&](double t) {
    const auto e = kernel.eve_exponent(t, a_w);
    const double hi = level_crossing(e, settings.tail_exponent,
                                     quad::gaussian_truncation_radius(e.coef[k], settings));
    return quad::integrate_finite([&](double r) { return r * std::exp(-e(r)); }, 0.0, hi, inner).value;
  };
  // t = e^x spreads the t-axis evenly over the many decades the leakage integrand lives on.
  auto integrand = [&](double x) {
    const double t = std::exp(x);
    if (t == 0.0 || !std::isfinite(t)) return 0.0;
    const double h = -std::expm1(-2.0 * pi * cfg.eve_density * j_of_t(t));
    return h / (1.0 + 1.0 / t);
  };
  auto res = quad::integrate_real_line(integrand, settings);
  res.value *= inv_ln2;
  res.abs_error *= inv_ln2;
  return res;
}

inline double leakage_rate(const NetworkConfig& cfg, std::size_t k, UserRole role,
                           const quad::QuadratureSettings& settings = {}) {
  return leakage_rate_detail(cfg, k, role, settings).value;
}

}  // namespace snhet::analytic

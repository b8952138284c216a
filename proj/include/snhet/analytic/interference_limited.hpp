#pragma once

#include <cmath>
#include <cstddef>

#include "snhet/analytic/leakage.hpp"
#include "snhet/analytic/legit_rates.hpp"
#include "snhet/core_model.hpp"
#include "snhet/quadrature.hpp"
#include "snhet/specialfn.hpp"

namespace snhet::analytic {

struct InterferenceLimitedRates {
  double r_m = 0.0;  // both cases
  double r_n = 0.0;  // both cases; with a_m = 0 the lone user's whole rate
  double abs_error = 0.0;
  bool converged = true;
};

inline void require_interference_limited(const NetworkConfig& cfg) {
  require_valid(cfg);
  if (cfg.noise_linear != 0.0) throw PreconditionError("interference-limited formulas need zero noise power");
  for (const auto& t : cfg.tiers)
    if (t.alpha != cfg.tiers[0].alpha || t.bias != cfg.tiers[0].bias)
      throw PreconditionError("interference-limited formulas need equal path-loss exponents and biases");
}

/// Legitimate rates with no noise, equal exponents, unbiased association. Depends on alpha and the split only.
inline InterferenceLimitedRates interference_limited_rates(double alpha, const NomaPowerSplit& split,
                                                           const quad::QuadratureSettings& settings = {}) {
  if (!(alpha > 2.0)) throw DomainError("path-loss exponent must exceed 2");
  InterferenceLimitedRates out;
  const double a_m = split.a_m, a_n = split.a_n;
  if (a_m > 0.0) {
    const auto res = quad::integrate_finite(
        [&](double t) {
          const double ta = t / (a_m - t * a_n);
          if (!std::isfinite(ta) || ta <= 0.0) return 0.0;
          const double z = 2.0 * ta / (alpha - 2.0) * hyp2f1_special(alpha, ta);
          return 1.0 / (2.0 * (1.0 + t) * (1.0 + z) * (1.0 + z));
        },
        0.0, a_m / a_n, settings);
    out.r_m = inv_ln2 * res.value;
    out.abs_error += inv_ln2 * res.abs_error;
    out.converged = res.converged;
  }
  // Coverage of the nearer of two users is 1/(2 + z) per case; a lone user has 1/(1 + z).
  const double lead = a_m > 0.0 ? 2.0 : 1.0;
  const auto res = quad::integrate_semi_infinite(
      [&](double t) {
        const double z = 2.0 * t / (a_n * (alpha - 2.0)) * hyp2f1_special(alpha, t / a_n);
        return 1.0 / ((1.0 + t) * (lead + z));
      },
      0.0, settings);
  out.r_n = inv_ln2 * res.value;
  out.abs_error += inv_ln2 * res.abs_error;
  out.converged = out.converged && res.converged;
  return out;
}

inline InterferenceLimitedRates interference_limited_rates(const NetworkConfig& cfg, std::size_t k,
                                                           const quad::QuadratureSettings& settings = {}) {
  require_interference_limited(cfg);
  return interference_limited_rates(cfg.tiers.at(k).alpha, effective_split(cfg, k), settings);
}

inline quad::QuadResult interference_limited_leakage_detail(const NetworkConfig& cfg, std::size_t k, UserRole role,
                                                            const quad::QuadratureSettings& settings = {}) {
  require_interference_limited(cfg);
  const double a_w = power_fraction(cfg, k, role);
  if (cfg.eve_density == 0.0 || a_w == 0.0) return {};
  const double alpha = cfg.tiers[k].alpha;
  const double pk = cfg.tiers[k].power_linear;
  double denom = 0.0;
  for (const auto& t : cfg.tiers) denom += t.density * std::pow(t.power_linear / pk, 2.0 / alpha);
  const double b = cfg.eve_density * std::pow(a_w, 2.0 / alpha) / (denom * gamma_pair(alpha));
  auto res = quad::integrate_real_line(
      [&](double x) {
        const double t = std::exp(x);
        if (t == 0.0 || !std::isfinite(t)) return 0.0;
        return -std::expm1(-b * std::exp(-2.0 * x / alpha)) / (1.0 + 1.0 / t);
      },
      settings);
  res.value *= inv_ln2;
  res.abs_error *= inv_ln2;
  return res;
}

inline double interference_limited_leakage(const NetworkConfig& cfg, std::size_t k, UserRole role,
                                           const quad::QuadratureSettings& settings = {}) {
  return interference_limited_leakage_detail(cfg, k, role, settings).value;
}

}  // namespace snhet::analytic

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "snhet/core_model.hpp"
#include "snhet/geometry.hpp"
#include "snhet/specialfn.hpp"

namespace snhet::analytic {

/// Per-tier constants of the interference transforms seen from serving tier k.
///
/// For a user at distance r with s = z r^alpha_k / P_k, the user-side exponent is
/// sum_j kappa_j(z) r^(2 alpha_k/alpha_j): the hypergeometric argument z/B_hat_j does not depend on r.
class InterferenceKernel {
 public:
  InterferenceKernel(const NetworkConfig& cfg, std::size_t k)
      : k_(k), alpha_k_(cfg.tiers.at(k).alpha), power_k_(cfg.tiers[k].power_linear), noise_(cfg.noise_linear) {
    for (std::size_t j = 0; j < cfg.tiers.size(); ++j) {
      const auto q = tier_ratios(cfg, k, j);
      const auto& t = cfg.tiers[j];
      Tier e;
      e.alpha = t.alpha;
      e.density = t.density;
      e.b_hat = q.b_hat;
      e.p_hat = q.p_hat;
      e.guard = std::pow(q.p_hat * q.b_hat, 2.0 / t.alpha);
      e.power = j == k ? 2.0 : 2.0 * alpha_k_ / t.alpha;
      e.gamma_pair = gamma_pair(t.alpha);
      tiers_.push_back(e);
    }
  }

  double alpha_k() const { return alpha_k_; }
  double power_k() const { return power_k_; }
  double noise() const { return noise_; }
  std::size_t tier() const { return k_; }

  /// log of the user interference transform is -exponent(r), for s = z r^alpha_k / P_k.
  /// noise_coef adds a noise_coef * r^alpha_k term (pass t*sigma^2/(a*P_k) for the exp{-...} factor).
  RadialExponent user_exponent(double z, double noise_coef = 0.0) const {
    RadialExponent e;
    for (const auto& t : tiers_) {
      const double x = z / t.b_hat;
      const double kappa = 2.0 * pi * t.density * t.guard * x * hyp2f1_special(t.alpha, x) / (t.alpha - 2.0);
      e.add(kappa, t.power);
    }
    if (noise_coef != 0.0) e.add(noise_coef, alpha_k_);
    return e;
  }

  /// log of the eavesdropper-side survivor term exp{-t s^2 r^alpha/(aP)} L_e(t r^alpha/(aP)) is -exponent(r).
  RadialExponent eve_exponent(double t, double a_w) const {
    RadialExponent e;
    for (const auto& tr : tiers_)
      e.add(pi * tr.density * tr.gamma_pair * std::pow(t * tr.p_hat / a_w, 2.0 / tr.alpha), tr.power);
    const double nc = t * noise_ / (a_w * power_k_);
    if (nc != 0.0) e.add(nc, alpha_k_);
    return e;
  }

 private:
  struct Tier {
    double alpha, density, b_hat, p_hat, guard, power, gamma_pair;
  };
  std::size_t k_;
  double alpha_k_, power_k_, noise_;
  std::vector<Tier> tiers_;
};

/// E[exp(-s I)] for the interference at a user at distance r_u from its tier-k server.
inline double laplace_user_interference(const NetworkConfig& cfg, std::size_t k, double s, double r_u) {
  if (!(s >= 0.0)) throw DomainError("laplace_user_interference: s must be >= 0");
  if (!(r_u > 0.0)) throw DomainError("laplace_user_interference: distance must be > 0");
  double acc = 0.0;
  for (std::size_t j = 0; j < cfg.tiers.size(); ++j) {
    const auto& t = cfg.tiers[j];
    const double y = nearest_interferer_distance(cfg, k, j, r_u);
    const double x = s * t.power_linear / std::pow(y, t.alpha);
    acc += 2.0 * pi * t.density * y * y * x / (t.alpha - 2.0) * hyp2f1_special(t.alpha, x);
  }
  return std::exp(-acc);
}

/// E[exp(-s I)] for full-plane interference at an eavesdropper.
inline double laplace_eve_interference(const NetworkConfig& cfg, double s) {
  if (!(s >= 0.0)) throw DomainError("laplace_eve_interference: s must be >= 0");
  double acc = 0.0;
  for (const auto& t : cfg.tiers)
    acc += pi * t.density * std::pow(s * t.power_linear, 2.0 / t.alpha) * gamma_pair(t.alpha);
  return std::exp(-acc);
}

}  // namespace snhet::analytic

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "snhet/core_model.hpp"
#include "snhet/quadrature.hpp"

namespace snhet {

/// Ratios of interfering tier j to serving tier k.
struct TierRatios {
  double p_hat = 1.0;
  double b_hat = 1.0;
  double a_hat = 1.0;
};

inline TierRatios tier_ratios(const NetworkConfig& cfg, std::size_t k, std::size_t j) {
  const auto& s = cfg.tiers.at(k);
  const auto& t = cfg.tiers.at(j);
  return {t.power_linear / s.power_linear, t.bias / s.bias, t.alpha / s.alpha};
}

/// sum_i coef_i * r^power_i, the exponent shape shared by the serving law and the interference transforms.
struct RadialExponent {
  std::vector<double> coef;
  std::vector<double> power;

  double operator()(double r) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < coef.size(); ++i) {
      if (coef[i] == 0.0) continue;
      acc += power[i] == 2.0 ? coef[i] * r * r : coef[i] * std::pow(r, power[i]);
    }
    return acc;
  }
  void add(double c, double p) {
    coef.push_back(c);
    power.push_back(p);
  }
};

/// Smallest bracketed r in (0, hi] with g(r) >= level, for g non-decreasing. Returns hi if g(hi) < level.
template <class G>
double level_crossing(G&& g, double level, double hi) {
  if (g(hi) < level) return hi;
  double lo = 0.0;
  for (int i = 0; i < 40 && hi - lo > 1e-9 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) >= level ? hi : lo) = mid;
  }
  return hi;
}

/// Distance to the closest tier-j interferer for a user at distance r from its tier-k server.
inline double nearest_interferer_distance(const NetworkConfig& cfg, std::size_t k, std::size_t j, double r) {
  const auto q = tier_ratios(cfg, k, j);
  if (j == k) return r;
  return std::pow(q.p_hat * q.b_hat, 1.0 / cfg.tiers[j].alpha) * std::pow(r, 1.0 / q.a_hat);
}

/// Campbell mean of the out-of-cell interference at a user at distance r from its tier-k server.
inline double mean_interference(const NetworkConfig& cfg, std::size_t k, double r) {
  if (!(r > 0.0)) throw DomainError("mean_interference: distance must be > 0");
  double acc = 0.0;
  for (std::size_t j = 0; j < cfg.tiers.size(); ++j) {
    const auto& t = cfg.tiers[j];
    const double y = nearest_interferer_distance(cfg, k, j, r);
    acc += 2.0 * pi * t.power_linear * t.density / (t.alpha - 2.0) * std::pow(y, 2.0 - t.alpha);
  }
  return acc;
}

/// Association probability and serving-distance law of tier k.
class ServingLaw {
 public:
  ServingLaw(const NetworkConfig& cfg, std::size_t k, const quad::QuadratureSettings& s = {})
      : k_(k), lambda_k_(cfg.tiers.at(k).density), settings_(s) {
    equal_power_ = true;
    for (std::size_t j = 0; j < cfg.tiers.size(); ++j) {
      const auto q = tier_ratios(cfg, k, j);
      const double alpha_j = cfg.tiers[j].alpha;
      const double p = 2.0 / q.a_hat;
      exponent_.add(pi * cfg.tiers[j].density * std::pow(q.p_hat * q.b_hat, 2.0 / alpha_j), j == k ? 2.0 : p);
      if (j != k && p != 2.0) equal_power_ = false;
    }
    own_coef_ = exponent_.coef[k];
    // The own-tier term alone bounds the exponent from below; the full exponent may cross sooner.
    radius_ = level_crossing(exponent_, settings_.tail_exponent, quad::gaussian_truncation_radius(own_coef_, settings_));
    if (equal_power_) {
      gauss_coef_ = 0.0;
      for (double c : exponent_.coef) gauss_coef_ += c;
    }

    quad::QuadratureSettings tight = settings_;
    tight.rel_tol = 1e-13;
    tight.abs_tol = 1e-300;
    const auto res =
        quad::integrate_finite([&](double r) { return r * std::exp(-exponent_(r)); }, 0.0, radius_, tight);
    association_ = 2.0 * pi * lambda_k_ * res.value;
    association_error_ = 2.0 * pi * lambda_k_ * res.abs_error;
    norm_ = 2.0 * pi * lambda_k_ / association_;
  }

  std::size_t tier() const { return k_; }
  double association() const { return association_; }
  double association_error() const { return association_error_; }
  /// True when every tier's r-exponent is 2 (equal path loss), so the law is Rayleigh-shaped.
  bool gaussian() const { return equal_power_; }
  /// E in the equal-path-loss case: exp(-E r^2) is the survivor function.
  double gaussian_coefficient() const { return gauss_coef_; }
  double own_coefficient() const { return own_coef_; }
  double truncation_radius() const { return radius_; }
  const RadialExponent& exponent() const { return exponent_; }
  /// Multiplier of r*exp(-Q(r)) in the pdf.
  double pdf_scale() const { return norm_; }

  double pdf(double r) const {
    if (r < 0.0) throw DomainError("serving distance must be >= 0");
    return norm_ * r * std::exp(-exponent_(r));
  }

  double cdf(double r) const {
    if (r < 0.0) throw DomainError("serving distance must be >= 0");
    if (equal_power_) return -std::expm1(-gauss_coef_ * r * r);
    if (r >= radius_) return 1.0;
    quad::QuadratureSettings s = settings_;
    s.rel_tol = std::min(s.rel_tol, 1e-9);
    s.abs_tol = 1e-14;
    auto res = quad::integrate_finite([&](double x) { return pdf(x); }, 0.0, r, s);
    return std::clamp(res.value, 0.0, 1.0);
  }

  double ccdf(double r) const {
    if (equal_power_) {
      if (r < 0.0) throw DomainError("serving distance must be >= 0");
      return std::exp(-gauss_coef_ * r * r);
    }
    if (r >= radius_) return 0.0;
    // Integrate the upper tail directly so small survivor values keep their relative accuracy.
    quad::QuadratureSettings s = settings_;
    s.rel_tol = std::min(s.rel_tol, 1e-9);
    s.abs_tol = 1e-14;
    auto res = quad::integrate_finite([&](double x) { return pdf(x); }, r, radius_, s);
    return std::clamp(res.value, 0.0, 1.0);
  }

 private:
  std::size_t k_;
  double lambda_k_;
  quad::QuadratureSettings settings_;
  RadialExponent exponent_;
  bool equal_power_ = false;
  double own_coef_ = 0.0;
  double gauss_coef_ = 0.0;
  double radius_ = 0.0;
  double association_ = 0.0;
  double association_error_ = 0.0;
  double norm_ = 0.0;
};

inline double association_probability(const NetworkConfig& cfg, std::size_t k) {
  require_valid(cfg);
  return ServingLaw(cfg, k).association();
}

inline std::vector<double> association_probabilities(const NetworkConfig& cfg) {
  require_valid(cfg);
  std::vector<double> out;
  for (std::size_t k = 0; k < cfg.tiers.size(); ++k) out.push_back(ServingLaw(cfg, k).association());
  return out;
}

inline double serving_distance_pdf(const NetworkConfig& cfg, std::size_t k, double r) {
  return ServingLaw(cfg, k).pdf(r);
}

inline double serving_distance_cdf(const NetworkConfig& cfg, std::size_t k, double r) {
  return ServingLaw(cfg, k).cdf(r);
}

}  // namespace snhet

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "snhet/analytic/laplace.hpp"
#include "snhet/core_model.hpp"
#include "snhet/geometry.hpp"
#include "snhet/quadrature.hpp"

namespace snhet::analytic {

inline constexpr double inv_ln2 = 1.0 / std::numbers::ln2;

/// Four legitimate-user rates of one tier (bits/s/Hz), with the accumulated quadrature error.
struct LegitRates {
  double r_m_case1 = 0.0;
  double r_n_case1 = 0.0;
  double r_n_case2 = 0.0;
  double r_m_case2 = 0.0;
  double abs_error = 0.0;
  bool converged = true;
};

namespace detail {

/// Everything the tier-k rate integrals need, built once.
struct TierContext {
  TierContext(const NetworkConfig& cfg, std::size_t k, const quad::QuadratureSettings& s)
      : law(cfg, k, s), kernel(cfg, k), split(effective_split(cfg, k)), settings(s), inner(s.tightened(0.1)) {}

  ServingLaw law;
  InterferenceKernel kernel;
  NomaPowerSplit split;
  quad::QuadratureSettings settings;
  quad::QuadratureSettings inner;

  // exp{-t s2 r^a/(c P)} L_I(t r^a/(c P)) = exp(-exponent(r)) with c the effective SINR divisor.
  RadialExponent survivor(double z) const {
    return kernel.user_exponent(z, z * kernel.noise() / kernel.power_k());
  }

  // int_lo^hi f(r) exp(-e(r)) w(r) dr over the serving law.
  template <class W>
  quad::QuadResult radial(const RadialExponent& e, double lo, double hi, W&& weight) const {
    const auto& q = law.exponent();
    // Cut where the combined exponent reaches the tail level; at large t the mass sits close to r = 0.
    hi = std::min(hi, level_crossing([&](double r) { return q(r) + e(r); }, settings.tail_exponent,
                                     law.truncation_radius()));
    if (!(hi > lo)) return {};
    const double norm = law.pdf_scale();
    return quad::integrate_finite(
        [&](double r) {
          const double v = std::exp(-q(r) - e(r));
          return v == 0.0 ? 0.0 : norm * r * v * weight(r);
        },
        lo, hi, inner);
  }

  double far_z(double t) const { return t / (split.a_m - t * split.a_n); }
  double far_limit() const { return split.a_m / split.a_n; }
};

inline constexpr auto unit_weight = [](double) { return 1.0; };

}  // namespace detail

/// Ergodic rates of the far (m) and near (n) users in both cases, for tier k.
inline LegitRates legit_rates(const NetworkConfig& cfg, std::size_t k, const FirstUserPlacement& placement,
                              const quad::QuadratureSettings& settings = {}) {
  require_valid(cfg);
  const detail::TierContext ctx(cfg, k, settings);
  LegitRates out;
  double inner_err = 0.0;
  bool inner_ok = true;
  auto track = [&](const quad::QuadResult& r) {
    inner_err = std::max(inner_err, r.abs_error);
    inner_ok = inner_ok && r.converged;
    return r.value;
  };
  auto finish = [&](const quad::QuadResult& r, double scale) {
    out.abs_error = std::max(out.abs_error, scale * r.abs_error);
    out.converged = out.converged && r.converged;
    return scale * r.value;
  };

  const bool far_active = ctx.split.a_m > 0.0;
  const double a_n = ctx.split.a_n;

  if (!noma_active(cfg, k)) {
    // One user per cell: the first user alone at full power, so case II with certainty.
    const auto* fixed = std::get_if<FixedPlacement>(&placement);
    if (fixed && (!(fixed->radius > 0.0) || !std::isfinite(fixed->radius)))
      throw DomainError("fixed first-user radius must be positive and finite");
    out.r_n_case2 = finish(quad::integrate_semi_infinite(
                               [&](double t) {
                                 const auto e = ctx.survivor(t);
                                 if (fixed) return std::exp(-e(fixed->radius)) / (1.0 + t);
                                 return track(ctx.radial(e, 0.0, ctx.law.truncation_radius(), detail::unit_weight)) /
                                        (1.0 + t);
                               },
                               0.0, settings),
                           inv_ln2);
    out.abs_error += inner_err;
    out.converged = out.converged && inner_ok;
    return out;
  }

  if (const auto* fixed = std::get_if<FixedPlacement>(&placement)) {
    const double ra = fixed->radius;
    if (!(ra > 0.0) || !std::isfinite(ra)) throw DomainError("fixed first-user radius must be positive and finite");
    if (far_active) {
      // The far user's survivor at ra factors out of the r_s integral.
      auto far_integrand = [&](double t, bool case1) {
        const double z = ctx.far_z(t);
        if (!std::isfinite(z) || z <= 0.0) return 0.0;
        const auto e = ctx.survivor(z);
        const double at_ra = std::exp(-e(ra));
        if (at_ra == 0.0) return 0.0;
        const auto part = case1 ? ctx.radial(e, 0.0, ra, detail::unit_weight)
                                : ctx.radial(e, ra, ctx.law.truncation_radius(), detail::unit_weight);
        return at_ra * track(part) / (1.0 + t);
      };
      out.r_m_case1 = finish(
          quad::integrate_finite([&](double t) { return far_integrand(t, true); }, 0.0, ctx.far_limit(), settings),
          inv_ln2);
      out.r_m_case2 = finish(
          quad::integrate_finite([&](double t) { return far_integrand(t, false); }, 0.0, ctx.far_limit(), settings),
          inv_ln2);
    }
    out.r_n_case1 = finish(quad::integrate_semi_infinite(
                               [&](double t) {
                                 const auto e = ctx.survivor(t / a_n);
                                 return track(ctx.radial(e, 0.0, ra, detail::unit_weight)) / (1.0 + t);
                               },
                               0.0, settings),
                           inv_ln2);
    const double survive = ctx.law.ccdf(ra);
    out.r_n_case2 = survive == 0.0 ? 0.0
                                   : finish(quad::integrate_semi_infinite(
                                                [&](double t) {
                                                  const auto e = ctx.survivor(t / a_n);
                                                  return std::exp(-e(ra)) / (1.0 + t);
                                                },
                                                0.0, settings),
                                            inv_ln2 * survive);
  } else {
    if (far_active) {
      // Both users' survivors share one shape, so the r_s < r_a region is half the square of its integral.
      const auto res = quad::integrate_finite(
          [&](double t) {
            const double z = ctx.far_z(t);
            if (!std::isfinite(z) || z <= 0.0) return 0.0;
            const double phi = track(ctx.radial(ctx.survivor(z), 0.0, ctx.law.truncation_radius(), detail::unit_weight));
            return phi * phi / (1.0 + t);
          },
          0.0, ctx.far_limit(), settings);
      out.r_m_case1 = finish(res, 0.5 * inv_ln2);
      out.r_m_case2 = out.r_m_case1;
    }
    // The two near-user cases are the same integral once both distances follow one law.
    const auto res = quad::integrate_semi_infinite(
        [&](double t) {
          const auto e = ctx.survivor(t / a_n);
          return track(ctx.radial(e, 0.0, ctx.law.truncation_radius(),
                                  [&](double r) { return ctx.law.ccdf(r); })) /
                 (1.0 + t);
        },
        0.0, settings);
    out.r_n_case1 = finish(res, inv_ln2);
    out.r_n_case2 = out.r_n_case1;
  }
  // Rough: the largest inner-panel error is added once, not propagated through the outer weights.
  out.abs_error += inner_err;
  out.converged = out.converged && inner_ok;
  return out;
}

}  // namespace snhet::analytic

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>

#include "snhet/analytic/interference_limited.hpp"
#include "snhet/analytic/leakage.hpp"
#include "snhet/analytic/legit_rates.hpp"
#include "snhet/analytic/lower_bounds.hpp"
#include "snhet/core_model.hpp"
#include "snhet/geometry.hpp"

namespace snhet::analytic {

enum class Engine {
  Exact,                // nested-integral rates and leakage
  LowerBound,           // Jensen bounds in place of the legitimate rates
  InterferenceLimited,  // zero-noise single integrals
};

inline std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::Exact: return "analytic";
    case Engine::LowerBound: return "lower_bound";
    case Engine::InterferenceLimited: return "interference_limited";
  }
  return "unknown";
}

struct EngineOptions {
  Engine engine = Engine::Exact;
  quad::QuadratureSettings quadrature;
};

/// Per-tier components and the combined ergodic secrecy rate.
inline RateBreakdown ergodic_secrecy_rate(const NetworkConfig& cfg, const FirstUserPlacement& placement,
                                          const EngineOptions& opts = {}) {
  require_valid(cfg);
  const auto& qs = opts.quadrature;
  qs.check();
  if (opts.engine == Engine::InterferenceLimited) {
    require_interference_limited(cfg);
    if (is_fixed(placement)) throw PreconditionError("interference-limited formulas average over a random first user");
  }

  RateBreakdown out;
  auto note = [&](double err, bool ok) {
    out.error_estimate = std::max(out.error_estimate, err);
    out.converged = out.converged && ok;
  };
  for (std::size_t k = 0; k < cfg.tiers.size(); ++k) {
    TierRates tr;
    const ServingLaw law(cfg, k, qs);
    tr.association = law.association();

    switch (opts.engine) {
      case Engine::Exact:
      case Engine::LowerBound: {
        const auto lr = opts.engine == Engine::Exact ? legit_rates(cfg, k, placement, qs)
                                                     : legit_rate_lower_bounds(cfg, k, placement, qs);
        tr.r_m_case1 = lr.r_m_case1;
        tr.r_n_case1 = lr.r_n_case1;
        tr.r_n_case2 = lr.r_n_case2;
        tr.r_m_case2 = lr.r_m_case2;
        note(lr.abs_error, lr.converged);
        const auto lm = leakage_rate_detail(cfg, k, UserRole::Far, qs);
        const auto ln = leakage_rate_detail(cfg, k, UserRole::Near, qs);
        tr.leak_m = lm.value;
        tr.leak_n = ln.value;
        note(std::max(lm.abs_error, ln.abs_error), lm.converged && ln.converged);
        break;
      }
      case Engine::InterferenceLimited: {
        const auto il = interference_limited_rates(cfg, k, qs);
        tr.r_m_case1 = tr.r_m_case2 = il.r_m;
        tr.r_n_case1 = noma_active(cfg, k) ? il.r_n : 0.0;
        tr.r_n_case2 = il.r_n;
        note(il.abs_error, il.converged);
        const auto lm = interference_limited_leakage_detail(cfg, k, UserRole::Far, qs);
        const auto ln = interference_limited_leakage_detail(cfg, k, UserRole::Near, qs);
        tr.leak_m = lm.value;
        tr.leak_n = ln.value;
        note(std::max(lm.abs_error, ln.abs_error), lm.converged && ln.converged);
        break;
      }
    }
    out.tiers.push_back(tr);
  }
  out.secrecy_total = out.recompute_secrecy();
  return out;
}

}  // namespace snhet::analytic

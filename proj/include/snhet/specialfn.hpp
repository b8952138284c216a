#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "snhet/core_model.hpp"

namespace snhet {

namespace detail {

inline void require_alpha(double alpha, const char* who) {
  if (!(alpha > 2.0)) throw DomainError(std::string(who) + ": path-loss exponent must exceed 2");
}

// 2F1(1,1;c;z) = sum n!/(c)_n z^n for 0 <= z < 1.
inline double hyp2f1_unit_series(double c, double z) {
  double term = 1.0, sum = 1.0;
  for (int n = 0; n < 2000; ++n) {
    term *= (n + 1.0) / (c + n) * z;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

}  // namespace detail

/// 2F1(1, 1-2/alpha; 2-2/alpha; -x) for x >= 0.
inline double hyp2f1_special(double alpha, double x) {
  detail::require_alpha(alpha, "hyp2f1_special");
  if (!(x >= 0.0)) throw DomainError("hyp2f1_special: argument must be >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;

  const double b = 1.0 - 2.0 / alpha;
  const double c = b + 1.0;
  if (x <= 2.0) {
    // Pfaff: 2F1(1,b;c;-x) = (1+x)^-1 2F1(1,c-b;c;x/(1+x)), and c-b = 1.
    return detail::hyp2f1_unit_series(c, x / (1.0 + x)) / (1.0 + x);
  }
  // Large x: b * int_0^1 s^(b-1)/(1+xs) ds split as int_0^inf minus the tail over [1, inf).
  const double lead = b * std::pow(x, -b) * pi / std::sin(pi * b);
  const double inv = 1.0 / x;
  double p = inv, tail = 0.0;
  for (int n = 0; n < 2000; ++n) {
    const double term = p / (n + 1.0 - b);
    tail += (n % 2 == 0) ? term : -term;
    if (term < 1e-18 * lead) break;
    p *= inv;
  }
  return lead - b * tail;
}

/// Gamma(1 + 2/alpha) * Gamma(1 - 2/alpha) via the reflection formula. Returns 1 for alpha = inf.
inline double gamma_pair(double alpha) {
  detail::require_alpha(alpha, "gamma_pair");
  if (std::isinf(alpha)) return 1.0;
  const double u = 2.0 / alpha;
  return pi * u / std::sin(pi * u);
}

}  // namespace snhet

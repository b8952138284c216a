#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace snhet::quad {

struct QuadratureSettings {
  double abs_tol = 1e-10;
  double rel_tol = 1e-6;
  std::size_t max_subdivisions = 500;
  // Radial domains with an exp(-c r^2) envelope are cut where the envelope reaches exp(-tail_exponent).
  double tail_exponent = 46.0;

  void check() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("quadrature tolerances must be > 0");
    if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be >= 1");
  }

  QuadratureSettings tightened(double factor) const {
    QuadratureSettings s = *this;
    s.abs_tol *= factor;
    s.rel_tol *= factor;
    return s;
  }
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  std::size_t subdivisions = 0;
  bool converged = true;  // false: tolerance not reached, value is the best estimate

  QuadResult& operator+=(const QuadResult& o) {
    value += o.value;
    abs_error += o.abs_error;
    evaluations += o.evaluations;
    subdivisions += o.subdivisions;
    converged = converged && o.converged;
    return *this;
  }
};

namespace detail {

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

struct Gk21Rule {
  std::array<double, 11> x{}, wk{};
  std::array<double, 5> wg{};
  Gk21Rule() {
    const auto& xs = boost::math::quadrature::gauss_kronrod<double, 21>::abscissa();
    const auto& ks = boost::math::quadrature::gauss_kronrod<double, 21>::weights();
    const auto& gs = boost::math::quadrature::gauss<double, 10>::weights();
    std::copy(xs.begin(), xs.end(), x.begin());
    std::copy(ks.begin(), ks.end(), wk.begin());
    std::copy(gs.begin(), gs.end(), wg.begin());
  }
};

inline const Gk21Rule& gk21() {
  static const Gk21Rule rule;
  return rule;
}

// One 21-point Kronrod panel with the Gauss-10 embedded estimate and the usual error scaling.
template <class F>
Segment gk21_panel(F& f, double a, double b) {
  const auto& r = gk21();
  const double center = 0.5 * (a + b), half = 0.5 * (b - a);
  std::array<double, 21> fv{};
  fv[0] = f(center);
  for (int i = 1; i <= 10; ++i) {
    fv[2 * i - 1] = f(center - half * r.x[i]);
    fv[2 * i] = f(center + half * r.x[i]);
  }
  double resk = r.wk[0] * fv[0], resg = 0.0, resabs = std::abs(resk);
  for (int i = 1; i <= 10; ++i) {
    const double pair = fv[2 * i - 1] + fv[2 * i];
    resk += r.wk[i] * pair;
    resabs += r.wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
    if (i % 2 == 1) resg += r.wg[i / 2] * pair;
  }
  const double mean = 0.5 * resk;
  double resasc = r.wk[0] * std::abs(fv[0] - mean);
  for (int i = 1; i <= 10; ++i)
    resasc += r.wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));

  const double ah = std::abs(half);
  double err = std::abs((resk - resg) * half);
  resasc *= ah;
  resabs *= ah;
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, resk * half, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (21 point) integration on [a, b].
template <class F>
QuadResult integrate_finite(F&& f, double a, double b, const QuadratureSettings& s = {}) {
  if (a == b) return {};
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("integrate_finite: infinite limit");
  std::priority_queue<detail::Segment> heap;
  auto first = detail::gk21_panel(f, a, b);
  double total = first.value, error = first.error;
  heap.push(first);
  QuadResult out;
  out.evaluations = 21;
  while (error > std::max(s.abs_tol, s.rel_tol * std::abs(total))) {
    if (out.subdivisions >= s.max_subdivisions) {
      out.converged = false;
      break;
    }
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      out.converged = false;  // interval too small to split further
      break;
    }
    heap.pop();
    const auto left = detail::gk21_panel(f, worst.a, mid);
    const auto right = detail::gk21_panel(f, mid, worst.b);
    out.evaluations += 42;
    ++out.subdivisions;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum from the pieces to drop accumulated update round-off.
  double value = 0.0, err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.abs_error = err;
  if (!std::isfinite(value) || !std::isfinite(err)) out.converged = false;  // integrand hit a singular node
  return out;
}

/// Integral over [a, inf): [a, a+1] directly, the rest through t = a + 1/v. Small v keeps full precision, so
/// algebraic tails out to t ~ 1e300 are represented (u/(1-u) would lose everything past t ~ 1e16).
template <class F>
QuadResult integrate_semi_infinite(F&& f, double a, const QuadratureSettings& s = {}) {
  auto g = [&](double v) {
    const double t = a + 1.0 / v;
    if (!std::isfinite(t)) return 0.0;
    const double y = f(t);
    return y == 0.0 ? 0.0 : y / (v * v);
  };
  auto head = integrate_finite(f, a, a + 1.0, s);
  auto tail = integrate_finite(g, 0.0, 1.0, s);
  head += tail;
  return head;
}

/// Integral over the whole real line, split at zero.
template <class F>
QuadResult integrate_real_line(F&& f, const QuadratureSettings& s = {}) {
  auto right = integrate_semi_infinite(f, 0.0, s);
  auto left = integrate_semi_infinite([&](double x) { return f(-x); }, 0.0, s);
  right += left;
  return right;
}

/// Radius beyond which exp(-c r^2) is below exp(-tail_exponent).
inline double gaussian_truncation_radius(double c, const QuadratureSettings& s = {}) {
  if (!(c > 0.0)) throw std::invalid_argument("gaussian_truncation_radius: coefficient must be > 0");
  return std::sqrt(s.tail_exponent / c);
}

}  // namespace snhet::quad

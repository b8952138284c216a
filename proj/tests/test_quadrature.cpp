#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "snhet/quadrature.hpp"

using namespace snhet::quad;
constexpr double pi = std::numbers::pi;

TEST(Quadrature, PolynomialIsExact) {
  auto r = integrate_finite([](double x) { return 3.0 * x * x - x + 2.0; }, -1.0, 2.0);
  EXPECT_NEAR(r.value, 13.5, 1e-13);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.subdivisions, 0u);
}

TEST(Quadrature, ReversedLimitsFlipSign) {
  auto a = integrate_finite([](double x) { return std::exp(x); }, 0.0, 1.0);
  auto b = integrate_finite([](double x) { return std::exp(x); }, 1.0, 0.0);
  EXPECT_NEAR(a.value, std::exp(1.0) - 1.0, 1e-14);
  EXPECT_NEAR(b.value, -a.value, 1e-14);
}

TEST(Quadrature, EndpointSingularity) {
  QuadratureSettings s;
  s.rel_tol = 1e-10;
  auto r = integrate_finite([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, s);
  EXPECT_NEAR(r.value, 2.0, 1e-8);
  auto l = integrate_finite([](double x) { return std::log(x); }, 0.0, 1.0, s);
  EXPECT_NEAR(l.value, -1.0, 1e-9);
}

TEST(Quadrature, SemiInfiniteClosedForms) {
  QuadratureSettings s;
  s.rel_tol = 1e-10;
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0, s).value, 1.0, 1e-10);
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, s).value, pi / 2, 1e-9);
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return std::exp(-x); }, 2.0, s).value, std::exp(-2.0), 1e-11);
  // log(1+x) e^{-x}: the ergodic rate of a unit-mean exponential SNR, e^1 E1(1).
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return std::log1p(x) * std::exp(-x); }, 0.0, s).value,
              0.596347362323194, 1e-10);
}

TEST(Quadrature, RealLine) {
  QuadratureSettings s;
  s.rel_tol = 1e-10;
  auto r = integrate_real_line([](double x) { return std::exp(-x * x); }, s);
  EXPECT_NEAR(r.value, std::sqrt(pi), 1e-10);
}

TEST(Quadrature, ReportsNonConvergence) {
  QuadratureSettings s;
  s.max_subdivisions = 3;
  s.rel_tol = 1e-12;
  auto r = integrate_finite([](double x) { return std::sin(1.0 / x); }, 1e-4, 1.0, s);
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.abs_error, 0.0);
}

TEST(Quadrature, SettingsCheck) {
  QuadratureSettings s;
  EXPECT_NO_THROW(s.check());
  s.rel_tol = -1.0;
  EXPECT_THROW(s.check(), std::invalid_argument);
  s = {};
  s.max_subdivisions = 0;
  EXPECT_THROW(s.check(), std::invalid_argument);
  EXPECT_THROW(integrate_finite([](double) { return 1.0; }, 0.0, INFINITY), std::invalid_argument);
}

TEST(Quadrature, TruncationRadius) {
  QuadratureSettings s;
  const double r = gaussian_truncation_radius(2.0, s);
  EXPECT_NEAR(2.0 * r * r, s.tail_exponent, 1e-12);
  EXPECT_THROW(gaussian_truncation_radius(0.0), std::invalid_argument);
}

TEST(Quadrature, HeavyTailKeepsFarField) {
  // Integrand ~ t^(-3/2): the part beyond t = 1e16 is worth ~1e-8 and must not be lost.
  QuadratureSettings s;
  s.rel_tol = 1e-11;
  s.abs_tol = 1e-15;
  auto r = integrate_semi_infinite([](double t) { return 1.0 / ((1.0 + t) * (1.0 + std::sqrt(t))); }, 0.0, s);
  // Closed form: int_0^inf dt/((1+t)(1+sqrt t)) = pi/2.
  EXPECT_NEAR(r.value, pi / 2, 1e-10);
  EXPECT_LE(std::abs(r.value - pi / 2), 10.0 * r.abs_error + 1e-14);
}

TEST(Quadrature, SingularNodeIsNotConverged) {
  auto r = integrate_finite([](double u) { return 1.0 / std::sqrt(1.0 - u); }, 0.0, 1.0);
  if (!std::isfinite(r.value)) EXPECT_FALSE(r.converged);
}

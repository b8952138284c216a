#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <random>

#include "snhet/geometry.hpp"

using namespace snhet;

namespace {

// A_k = int_0^inf 2 pi lambda_k r exp(-pi lambda_k r^2) prod_{j!=k} exp(-pi lambda_j y_j(r)^2) dr.
double association_oracle(const NetworkConfig& c, std::size_t k) {
  boost::math::quadrature::exp_sinh<double> es;
  const auto& sk = c.tiers[k];
  auto f = [&](double r) {
    double e = pi * sk.density * r * r;
    for (std::size_t j = 0; j < c.tiers.size(); ++j) {
      if (j == k) continue;
      const auto& t = c.tiers[j];
      const double y = std::pow(t.power_linear * t.bias / (sk.power_linear * sk.bias), 1.0 / t.alpha) *
                       std::pow(r, sk.alpha / t.alpha);
      e += pi * t.density * y * y;
    }
    return 2.0 * pi * sk.density * r * std::exp(-e);
  };
  return es.integrate(f, 1e-12);
}

NetworkConfig random_config(std::mt19937_64& g) {
  std::uniform_int_distribution<int> nk(1, 4);
  std::uniform_real_distribution<double> alpha(2.5, 5.0), dbm(10.0, 46.0), dens(0.1, 20.0), bias(0.5, 10.0);
  NetworkConfig c;
  const int k = nk(g);
  for (int i = 0; i < k; ++i) c.tiers.push_back({dbm_to_linear(dbm(g)), dens(g) * lambda0, alpha(g), bias(g)});
  c.noise_linear = dbm_to_linear(-90.0);
  return c;
}

}  // namespace

TEST(ServingLaw, AssociationMatchesIndependentQuadrature) {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = random_config(g);
    for (std::size_t k = 0; k < c.tier_count(); ++k)
      EXPECT_NEAR(association_probability(c, k), association_oracle(c, k), 1e-9) << "trial " << trial << " k " << k;
  }
}

TEST(ServingLaw, AssociationSumsToOne) {
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = association_probabilities(random_config(g));
    double s = 0.0;
    for (double v : p) {
      EXPECT_GE(v, 0.0);
      s += v;
    }
    EXPECT_NEAR(s, 1.0, 1e-9);
  }
}

TEST(ServingLaw, EqualAlphaClosedForm) {
  NetworkConfig c = table1_config(3);
  for (auto& t : c.tiers) t.alpha = 4.0;
  c.tiers[1].density = 4 * lambda0;
  c.tiers[2].density = 6 * lambda0;
  for (std::size_t k = 0; k < 3; ++k) {
    double den = 0.0;
    for (const auto& t : c.tiers) den += t.density * std::pow(t.power_linear / c.tiers[k].power_linear, 0.5);
    const double want = c.tiers[k].density / den;
    EXPECT_NEAR(association_probability(c, k) / want, 1.0, 1e-10);
    EXPECT_TRUE(ServingLaw(c, k).gaussian());
  }
}

TEST(ServingLaw, SingleTierIsRayleigh) {
  NetworkConfig c = table1_config(1);
  const ServingLaw law(c, 0);
  EXPECT_NEAR(law.association(), 1.0, 1e-12);
  const double r = 300.0;
  EXPECT_NEAR(law.cdf(r), 1.0 - std::exp(-pi * lambda0 * r * r), 1e-14);
  EXPECT_NEAR(law.pdf(r), 2.0 * pi * lambda0 * r * std::exp(-pi * lambda0 * r * r), 1e-18);
}

TEST(ServingLaw, PdfCdfConsistentForUnequalAlpha) {
  NetworkConfig c = table1_config(2);
  c.tiers[1].density = 10 * lambda0;
  for (std::size_t k = 0; k < 2; ++k) {
    const ServingLaw law(c, k);
    EXPECT_FALSE(law.gaussian());
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double r : {10.0, 50.0, 200.0, 600.0}) {
      const double want = ts.integrate([&](double x) { return law.pdf(x); }, 0.0, r);
      EXPECT_NEAR(law.cdf(r), want, 1e-9);
      EXPECT_NEAR(law.cdf(r) + law.ccdf(r), 1.0, 1e-9);
    }
    EXPECT_DOUBLE_EQ(law.cdf(law.truncation_radius() * 2), 1.0);
    EXPECT_THROW(law.pdf(-1.0), DomainError);
  }
}

TEST(Geometry, MeanInterferenceMatchesCampbellIntegral) {
  NetworkConfig c = table1_config(3);
  c.tiers[2].bias = 5.0;
  boost::math::quadrature::exp_sinh<double> es;
  for (std::size_t k = 0; k < 3; ++k)
    for (double r : {5.0, 80.0, 400.0}) {
      double want = 0.0;
      for (std::size_t j = 0; j < 3; ++j) {
        const auto& t = c.tiers[j];
        const double y = nearest_interferer_distance(c, k, j, r);
        want += 2.0 * pi * t.density * t.power_linear *
                es.integrate([&](double v) { return std::pow(y + v, 1.0 - t.alpha); });
      }
      EXPECT_NEAR(mean_interference(c, k, r) / want, 1.0, 1e-9);
    }
  EXPECT_THROW(mean_interference(c, 0, 0.0), DomainError);
}

TEST(Geometry, GuardRadiusSameTierIsServingDistance) {
  NetworkConfig c = table1_config(2);
  EXPECT_EQ(nearest_interferer_distance(c, 1, 1, 77.0), 77.0);
  // Equal received biased power at the guard radius.
  const double r = 120.0, y = nearest_interferer_distance(c, 1, 0, r);
  EXPECT_NEAR(c.tiers[0].power_linear * std::pow(y, -c.tiers[0].alpha),
              c.tiers[1].power_linear * std::pow(r, -c.tiers[1].alpha), 1e-20);
}

TEST(Geometry, LevelCrossing) {
  auto g = [](double r) { return r * r; };
  EXPECT_NEAR(level_crossing(g, 4.0, 10.0), 2.0, 1e-8);
  EXPECT_EQ(level_crossing(g, 400.0, 10.0), 10.0);
}

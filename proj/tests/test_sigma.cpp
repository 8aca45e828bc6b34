#include <gtest/gtest.h>

#include <random>

#include "corput/sigma.hpp"
#include "support/lp_oracle.hpp"
#include "support/random_density.hpp"

using namespace corput;
using corput::testing::random_step_density;
using corput::testing::sigma_lp;

TEST(Sigma, Examples) {
  const auto u = PiecewiseDensity1D::uniform(0.0, 1.0);
  EXPECT_NEAR(sigma(discretize(u, 0.02), 0.2), 0.4, 1e-12);
  EXPECT_NEAR(sigma(discretize(u, 0.05), 0.6), 1.0, 1e-12);
  EXPECT_NEAR(sigma(GridMeasure1D(0.0, 0.01, {1.0}), 0.5), 1.0, 1e-12);
  EXPECT_NEAR(sigma(u, 0.2), 0.4, 1e-9);
  EXPECT_THROW(sigma(discretize(u, 0.05), 0.2), std::invalid_argument);
  EXPECT_THROW(sigma(discretize(u, 0.05), 0.0), std::invalid_argument);
}

TEST(Sigma, AgreesWithSimplexOracle) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> len(1, 30);
  for (int trial = 0; trial < 150; ++trial) {
    const double eps = 0.05 + 0.3 * (u(rng) + 1.0);
    const double h = eps / (10.0 + 10.0 * (u(rng) + 1.0));
    std::vector<double> w(static_cast<std::size_t>(len(rng)));
    const bool signed_weights = trial % 3 == 0;
    for (auto& x : w) x = signed_weights ? u(rng) : 0.5 * (u(rng) + 1.0);
    const GridMeasure1D nu(0.0, h, w);
    const double dp = sigma(nu, eps);
    const double lp = sigma_lp(w, h, eps);
    EXPECT_NEAR(dp, lp, 1e-8 * std::max(1.0, std::abs(lp))) << "trial " << trial;
  }
}

TEST(Sigma, Sandwich) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_step_density(rng);
    for (double eps : {0.01, 0.1, 0.5}) {
      const double s = sigma(rho, eps);
      const double w = omega(rho, eps);
      EXPECT_GE(s, 0.5 * w * 0.95) << trial << " eps " << eps;
      EXPECT_LE(s, 6.0 * w * 1.05) << trial << " eps " << eps;
    }
  }
}

TEST(Sigma, MonotoneAndMidpointConcave) {
  std::mt19937_64 rng(5);
  const auto eps = log_space(0.01, 1.0, 12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rho = random_step_density(rng);
    // one fine grid for all eps keeps the comparison free of discretization drift
    const auto g = discretize(rho, 0.001);
    std::vector<double> s;
    for (double e : eps) s.push_back(sigma(g, e));
    for (std::size_t i = 1; i < s.size(); ++i) EXPECT_GE(s[i], s[i - 1] - 1e-12);
    for (std::size_t i = 0; i < eps.size(); ++i)
      for (std::size_t j = i + 1; j < eps.size(); ++j) {
        const double mid = sigma(g, 0.5 * (eps[i] + eps[j]));
        EXPECT_GE(mid, 0.5 * (s[i] + s[j]) - 1e-12);
      }
  }
}

TEST(Sigma, MeasureOfSetsBound) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-0.2, 1.2);
  std::uniform_int_distribution<int> count(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_step_density(rng);
    std::vector<double> ends(2 * static_cast<std::size_t>(count(rng)));
    for (auto& x : ends) x = u(rng);
    std::sort(ends.begin(), ends.end());
    double lam = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < ends.size(); i += 2) {
      lam += ends[i + 1] - ends[i];
      mass += rho.mass_between(ends[i], ends[i + 1]);
    }
    if (!(lam > 1e-3)) continue;
    EXPECT_LE(mass, sigma(rho, lam) + 1e-3) << trial;
  }
}

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "corput/poly_text.hpp"
#include "corput/sublevel.hpp"
#include "support/random_density.hpp"

using namespace corput;
using corput::testing::random_step_density;

namespace {

const PiecewiseDensity1D kUnit = PiecewiseDensity1D::uniform(0.0, 1.0);

// t^k / k! plus random lower-order terms, so the k-th derivative is 1
Polynomial1D unit_top_derivative(std::mt19937_64& rng, int k) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j < k; ++j) c[static_cast<std::size_t>(j)] = u(rng);
  c[static_cast<std::size_t>(k)] = 1.0 / std::tgamma(k + 1.0);
  return Polynomial1D(c);
}

}  // namespace

TEST(Sublevel, Examples) {
  EXPECT_NEAR(sublevel_measure(kUnit, Polynomial1D({0.0, 1.0}), 0.3), 0.3, 1e-15);
  for (double eps : {1e-4, 0.01, 0.3, 0.5, 2.0}) {
    const double m = sublevel_measure(kUnit, Polynomial1D({0.0, 0.0, 0.5}), eps);
    EXPECT_NEAR(m, std::min(std::sqrt(2 * eps), 1.0), 1e-12);
    EXPECT_LE(m, sublevel_bound(2, 1.0, eps));
  }
  const auto est = sublevel_measure(SampleableMeasureND::cube(3), parse_polynomial("x1", 3), 0.1, 200'000, 4);
  EXPECT_NEAR(est.value, 0.2, 3 * est.std_error);
  EXPECT_GT(est.std_error, 0.0);
}

TEST(Sublevel, MonotoneInEps) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = random_step_density(rng);
    const auto g = unit_top_derivative(rng, 2 + trial % 3);
    double prev = 0.0;
    for (double eps : log_space(1e-5, 1.0, 30)) {
      const double m = sublevel_measure(rho, g, eps);
      EXPECT_GE(m, prev - 1e-15);
      prev = m;
    }
  }
}

TEST(Sublevel, ExplicitConstantBound) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + trial % 3;
    const auto rho = random_step_density(rng);
    const auto g = unit_top_derivative(rng, k);
    for (double eps : {1e-4, 1e-3, 1e-2, 1e-1})
      EXPECT_LE(sublevel_measure(rho, g, eps), sublevel_bound(k, rho.sup_norm(), eps)) << trial;
  }
}

TEST(DividedDiff, Examples) {
  const auto c = divided_diff({0.0, 1.0, 2.0});
  ASSERT_EQ(c.coefficients.size(), 3u);
  EXPECT_DOUBLE_EQ(c.coefficients[0], 1.0);
  EXPECT_DOUBLE_EQ(c.coefficients[1], -2.0);
  EXPECT_DOUBLE_EQ(c.coefficients[2], 1.0);
  EXPECT_DOUBLE_EQ(c.apply(Polynomial1D({0.0, 0.0, 1.0})), 2.0);
  EXPECT_DOUBLE_EQ(c.apply(Polynomial1D({0.0, 1.0})), 0.0);
  EXPECT_THROW(divided_diff({0.0, 1.0, 1.0}), std::invalid_argument);
}

TEST(DividedDiff, ReproducesLeadingCoefficient) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + trial % 6;
    std::vector<double> c(static_cast<std::size_t>(k) + 1), pts(static_cast<std::size_t>(k) + 1);
    for (auto& x : c) x = u(rng);
    if (std::abs(c.back()) < 0.05) c.back() = 0.5;
    for (auto& x : pts) x = 2.0 * u(rng);
    const Polynomial1D p(c);
    const auto cert = divided_diff(pts);
    const double expect = std::tgamma(k + 1.0) * p.leading();
    EXPECT_NEAR(cert.apply(p), expect, 1e-8 * std::abs(expect)) << trial;
    if (k >= 2) {
      std::vector<double> lower(c.begin(), c.end() - 1);
      double scale = 0.0;
      for (double w : cert.coefficients) scale += std::abs(w);
      EXPECT_NEAR(cert.apply(Polynomial1D(lower)), 0.0, 1e-10 * scale);
    }
  }
}

TEST(Quantile, Examples) {
  auto q = quantile_points(kUnit, {{0.0, 1.0}}, 2);
  ASSERT_EQ(q.points.size(), 3u);
  EXPECT_NEAR(q.points[0], 0.0, 1e-15);
  EXPECT_NEAR(q.points[1], 0.5, 1e-14);
  EXPECT_NEAR(q.points[2], 1.0, 1e-14);
  EXPECT_NEAR(q.min_product, 0.25, 1e-13);
  EXPECT_NEAR(q.threshold, std::pow(1.0 / (4.0 * std::numbers::e), 2), 1e-15);
  EXPECT_TRUE(q.holds());

  q = quantile_points(kUnit, {{0.0, 0.25}, {0.75, 1.0}}, 1);
  EXPECT_NEAR(q.points[0], 0.0, 1e-15);
  EXPECT_NEAR(q.points[1], 1.0, 1e-14);
  EXPECT_NEAR(q.mass_e, 0.5, 1e-15);

  q = quantile_points(kUnit, {{0.2, 0.7}}, 1);
  EXPECT_NEAR(q.points[0], 0.2, 1e-15);
  EXPECT_NEAR(q.points[1], 0.7, 1e-14);

  EXPECT_THROW(quantile_points(kUnit, {{2.0, 3.0}}, 2), std::invalid_argument);
}

TEST(Quantile, SeparationBound) {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(-0.1, 1.1);
  std::uniform_int_distribution<int> pieces(1, 3);
  int tested = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto rho = random_step_density(rng);
    std::vector<double> ends(2 * static_cast<std::size_t>(pieces(rng)));
    for (auto& x : ends) x = u(rng);
    std::sort(ends.begin(), ends.end());
    std::vector<Interval> e;
    double mass = 0.0;
    for (std::size_t i = 0; i < ends.size(); i += 2) {
      e.push_back({ends[i], ends[i + 1]});
      mass += rho.mass_between(ends[i], ends[i + 1]);
    }
    if (!(mass > 1e-6)) continue;
    const int k = 1 + trial % 4;
    const auto q = quantile_points(rho, e, k);
    EXPECT_TRUE(q.holds()) << trial << " " << q.min_product << " < " << q.threshold;
    // the compact-set choice E' = E gives the stronger 2e threshold too
    EXPECT_GE(q.min_product, std::pow(q.mass_e / (2.0 * std::numbers::e), k) * (1 - 1e-9));
    ++tested;
  }
  EXPECT_GT(tested, 100);
}

TEST(CwRatio, ClosedForms) {
  const auto a = cw_ratio(kUnit, Polynomial1D({0.0, 1.0}), log_space(1e-4, 1.0, 16));
  for (double r : a.ratio) EXPECT_NEAR(r, 1.0 / std::sqrt(3.0), 1e-12);
  const auto b = cw_ratio(kUnit, Polynomial1D({0.0, 0.0, 1.0}));
  for (double r : b.ratio) EXPECT_NEAR(r, std::pow(5.0, -0.25), 1e-12);
  EXPECT_EQ(b.t.size(), 16u);
}

TEST(CwRatio, ProductOfTwoOnCube) {
  // |x1 x2| <= t on Q^2 has probability 4t (1 - ln 4t) for t <= 1/4
  const auto r = cw_ratio(SampleableMeasureND::cube(2), parse_polynomial("x1*x2"), 1'000'000, 6, log_space(1e-4, 1e-1, 10));
  EXPECT_NEAR(r.l2_norm, 1.0 / 12.0, 1e-15);
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    const double t = r.t[i];
    const double p = 4 * t * (1 - std::log(4 * t));
    const double exact = std::sqrt(r.l2_norm) * p / std::sqrt(t);
    EXPECT_NEAR(r.ratio[i], exact, 4 * r.ratio_stderr[i] + 1e-12) << t;
  }
  EXPECT_TRUE(std::isfinite(r.max_ratio));
}

TEST(CwRatio, DimensionStability) {
  std::vector<double> maxima;
  for (int n : {2, 4, 8}) {
    Polynomial f(n);
    for (int j = 0; j < n; ++j) f = f + Polynomial::variable(n, j) * Polynomial::variable(n, j);
    f = f - Polynomial::constant(n, n / 12.0);
    maxima.push_back(cw_ratio(SampleableMeasureND::cube(n), f, 400'000, 12).max_ratio);
  }
  const auto [lo, hi] = std::minmax_element(maxima.begin(), maxima.end());
  EXPECT_LE(*hi / *lo, 3.0);
}

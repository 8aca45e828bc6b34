#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "corput/density1d.hpp"
#include "corput/numeric.hpp"
#include "support/random_density.hpp"

using namespace corput;
using corput::testing::random_step_density;

namespace {

PiecewiseDensity1D two_step() { return PiecewiseDensity1D::step({0.0, 0.5, 1.0}, {1.5, 0.5}); }

// midpoint-rule shift integral, independent of the exact overlap code
double shift_l1_quadrature(const PiecewiseDensity1D& rho, double h, int cells) {
  const Interval s = rho.support();
  const double lo = s.lo - std::abs(h), hi = s.hi + std::abs(h);
  const double dx = (hi - lo) / cells;
  CompensatedSum acc;
  for (int i = 0; i < cells; ++i) {
    const double x = lo + (i + 0.5) * dx;
    acc.add(std::abs(rho(x + h) - rho(x)) * dx);
  }
  return acc.value();
}

// 1/(2 sqrt s) on (0, 1] as a step density with exact cell masses on a
// geometric grid reaching down to 1e-14
PiecewiseDensity1D inverse_sqrt_density() {
  std::vector<double> b{0.0};
  for (int k = -14 * 20; k <= 0; ++k) b.push_back(std::pow(10.0, k / 20.0));
  std::vector<double> v;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) v.push_back((std::sqrt(b[i + 1]) - std::sqrt(b[i])) / (b[i + 1] - b[i]));
  return PiecewiseDensity1D::step(std::move(b), v);
}

}  // namespace

TEST(Density1D, Construction) {
  EXPECT_THROW(PiecewiseDensity1D({0.0, 0.0}, {Polynomial1D::constant(1.0)}), std::invalid_argument);
  EXPECT_THROW(PiecewiseDensity1D({0.0, 1.0, 2.0}, {Polynomial1D::constant(1.0)}), std::invalid_argument);
  const auto t = PiecewiseDensity1D::tent(0.0, 2.0);
  EXPECT_NEAR(t.mass(), 1.0, 1e-15);
  EXPECT_NEAR(t(1.0), 1.0, 1e-15);
  EXPECT_NEAR(t.cdf(1.0), 0.5, 1e-15);
  EXPECT_EQ(t(2.0), 0.0);
  EXPECT_TRUE(t.is_nonnegative());
  EXPECT_FALSE(t.is_piecewise_constant());
}

TEST(Density1D, BvSeminormExamples) {
  EXPECT_NEAR(bv_seminorm(PiecewiseDensity1D::uniform(0.0, 1.0)), 2.0, 1e-15);
  EXPECT_NEAR(bv_seminorm(PiecewiseDensity1D::uniform(-1.0, 3.0)), 0.5, 1e-15);
  EXPECT_NEAR(bv_seminorm(PiecewiseDensity1D::tent(0.0, 2.0)), 2.0, 1e-14);
  EXPECT_NEAR(bv_seminorm(two_step()), 3.0, 1e-15);
}

TEST(Density1D, SupNormBoundedByHalfVariation) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_step_density(rng);
    EXPECT_LE(rho.sup_norm(), 0.5 * bv_seminorm(rho) * (1 + 1e-12));
  }
  const auto t = PiecewiseDensity1D::tent(-1.0, 0.5);
  EXPECT_LE(t.sup_norm(), 0.5 * bv_seminorm(t) * (1 + 1e-12));
}

TEST(Density1D, ShiftL1Examples) {
  const auto u = PiecewiseDensity1D::uniform(0.0, 1.0);
  EXPECT_NEAR(shift_l1(u, 0.2), 0.4, 1e-15);
  EXPECT_EQ(shift_l1(u, 0.0), 0.0);
  EXPECT_EQ(shift_l1(PiecewiseDensity1D::tent(0.0, 2.0), 0.0), 0.0);
  EXPECT_NEAR(shift_l1(u, 2.0), 2.0, 1e-15);
}

TEST(Density1D, ShiftL1MatchesQuadrature) {
  const auto t = PiecewiseDensity1D::tent(0.0, 2.0);
  for (double h : {0.05, 0.1, 0.37, 1.2}) EXPECT_NEAR(shift_l1(t, h), shift_l1_quadrature(t, h, 200000), 1e-7);
  const PiecewiseDensity1D wavy({-1.0, 0.0, 1.0}, {Polynomial1D({0.5, 0.0, -0.25}), Polynomial1D({0.25, 0.5, -0.5})});
  for (double h : {0.03, 0.3, 0.9}) EXPECT_NEAR(shift_l1(wavy, h), shift_l1_quadrature(wavy, h, 200000), 1e-5);
}

TEST(Density1D, ShiftL1SymmetryAndSubadditivity) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_step_density(rng);
    const double h1 = u(rng), h2 = u(rng);
    EXPECT_EQ(shift_l1(rho, h1), shift_l1(rho, -h1));
    EXPECT_LE(shift_l1(rho, h1 + h2), shift_l1(rho, h1) + shift_l1(rho, h2) + 1e-12);
    EXPECT_NEAR(shift_l1(rho, h1), shift_l1_quadrature(rho, h1, 100000), 1e-3 * bv_seminorm(rho) + 1e-9);
  }
}

TEST(Density1D, OmegaExamples) {
  const auto u = PiecewiseDensity1D::uniform(0.0, 1.0);
  EXPECT_NEAR(omega(u, 0.2), 0.4, 1e-15);
  EXPECT_NEAR(omega(u, 3.0), 2.0, 1e-15);
  // tent on [0, 2]: three h^2/2 corner pieces plus two flat stretches h(1 - h),
  // so m(h) = 2h - h^2/2
  const auto t = PiecewiseDensity1D::tent(0.0, 2.0);
  const double oracle = shift_l1_quadrature(t, 0.1, 400000);
  EXPECT_NEAR(oracle, 0.195, 1e-8);
  EXPECT_NEAR(omega(t, 0.1), 0.195, 1e-6 * 0.195);
}

TEST(Density1D, OmegaIsSupOfShifts) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = random_step_density(rng);
    const double eps = 0.3;
    double brute = 0.0;
    for (int i = 1; i <= 3000; ++i) brute = std::max(brute, shift_l1(rho, eps * i / 3000));
    const double w = omega(rho, eps);
    EXPECT_GE(w, brute - 1e-12);
    EXPECT_LE(w, brute + bv_seminorm(rho) * eps / 3000 + 1e-12);
    const auto curve = omega_curve(rho, {0.01, 0.1, eps});
    EXPECT_NEAR(curve[2], w, 1e-14);
    EXPECT_NEAR(curve[0], omega(rho, 0.01), 1e-14);
  }
}

TEST(Density1D, BesovExamples) {
  const auto grid = log_space(1e-4, 1.0, 33);
  const auto u = besov_seminorm(PiecewiseDensity1D::uniform(0.0, 1.0), 1.0, grid);
  EXPECT_NEAR(u.value, 2.0, 1e-12);
  EXPECT_FALSE(u.diverging);
  const auto t = besov_seminorm(PiecewiseDensity1D::tent(0.0, 2.0), 1.0, grid);
  EXPECT_NEAR(t.value, 2.0, 1e-3);
  EXPECT_FALSE(t.diverging);
  EXPECT_THROW(besov_seminorm(PiecewiseDensity1D::uniform(0.0, 1.0), 1.0, log_space(0.1, 1.0, 8)),
               std::invalid_argument);
}

TEST(Density1D, BesovInverseSqrt) {
  const auto rho = inverse_sqrt_density();
  ASSERT_NEAR(rho.mass(), 1.0, 1e-12);
  const auto grid = log_space(1e-4, 1.0, 17);
  const auto half = besov_seminorm(rho, 0.5, grid);
  const auto one = besov_seminorm(rho, 1.0, grid);
  EXPECT_FALSE(half.diverging);
  EXPECT_TRUE(one.diverging);
  // quadrature oracle: eps^{-1/2} omega stays near the same finite value across eps
  double oracle = 0.0;
  for (double e : {1e-3, 1e-2, 1e-1}) oracle = std::max(oracle, shift_l1_quadrature(rho, e, 400000) / std::sqrt(e));
  EXPECT_GT(half.value, 0.9 * oracle);
  EXPECT_LT(half.value, 2.5);
}

TEST(Density1D, MixtureExamples) {
  const auto m1 = mixture_decompose(PiecewiseDensity1D::uniform(0.0, 1.0));
  ASSERT_EQ(m1.components.size(), 1u);
  EXPECT_EQ(m1.components[0].a, 0.0);
  EXPECT_EQ(m1.components[0].b, 1.0);
  EXPECT_NEAR(m1.components[0].weight, 1.0, 1e-15);

  const auto m2 = mixture_decompose(two_step());
  ASSERT_EQ(m2.components.size(), 2u);
  EXPECT_EQ(m2.components[0].a, 0.0);
  EXPECT_EQ(m2.components[0].b, 1.0);
  EXPECT_NEAR(m2.components[0].weight, 0.5, 1e-15);
  EXPECT_EQ(m2.components[1].b, 0.5);
  EXPECT_NEAR(m2.components[1].weight, 0.5, 1e-15);
  EXPECT_NEAR(m2.total_variation(), 3.0, 1e-14);

  EXPECT_THROW(mixture_decompose(PiecewiseDensity1D::step({0.0, 1.0, 2.0}, {1.5, -0.5})), std::invalid_argument);
  EXPECT_THROW(mixture_decompose(PiecewiseDensity1D::step({0.0, 1.0}, {2.0})), std::invalid_argument);
  EXPECT_THROW(mixture_decompose(PiecewiseDensity1D::tent(0.0, 1.0)), std::invalid_argument);
}

TEST(Density1D, MixtureReconstructsRandomDensities) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_step_density(rng, 12);
    const auto mix = mixture_decompose(rho);
    double wsum = 0.0;
    for (const auto& c : mix.components) {
      EXPECT_LT(c.a, c.b);
      EXPECT_GT(c.weight, 0.0);
      wsum += c.weight;
    }
    EXPECT_NEAR(wsum, 1.0, 1e-12);
    EXPECT_LE(l1_distance(mix.reconstruct(), rho), 1e-12);
    const double tv = bv_seminorm(rho);
    EXPECT_LE(std::abs(mix.total_variation() - tv), 1e-12 * tv);
  }
}

TEST(Density1D, DistanceExamples) {
  const auto u = PiecewiseDensity1D::uniform(0.0, 1.0);
  auto d = distances(u, u);
  EXPECT_EQ(d.tv, 0.0);
  EXPECT_EQ(d.kantorovich, 0.0);
  d = distances(u, PiecewiseDensity1D::uniform(0.5, 1.5));
  EXPECT_NEAR(d.tv, 1.0, 1e-15);
  EXPECT_NEAR(d.kantorovich, 0.5, 1e-15);
  for (double h : {0.1, 0.25, 0.9, 1.0}) EXPECT_NEAR(distances(u, u.translated(h)).kantorovich, h, 1e-14);
  EXPECT_THROW(distances(u, PiecewiseDensity1D::step({0.0, 1.0}, {2.0})), std::invalid_argument);
}

TEST(Density1D, DistancesMatchQuadrature) {
  const auto a = PiecewiseDensity1D::tent(0.0, 2.0);
  const auto b = two_step();
  const auto d = distances(a, b);
  const int m = 200000;
  double tv = 0.0, k = 0.0;
  for (int i = 0; i < m; ++i) {
    const double x = 2.0 * (i + 0.5) / m;
    tv += std::abs(a(x) - b(x)) * 2.0 / m;
    k += std::abs(a.cdf(x) - b.cdf(x)) * 2.0 / m;
  }
  EXPECT_NEAR(d.tv, tv, 1e-6);
  EXPECT_NEAR(d.kantorovich, k, 1e-8);
}

TEST(Density1D, Discretize) {
  const auto t = PiecewiseDensity1D::tent(0.0, 2.0);
  const auto g = discretize(t, 0.1);
  EXPECT_EQ(g.size(), 20u);
  EXPECT_NEAR(g.total(), 1.0, 1e-14);
  EXPECT_NEAR(g.weights[0], 0.005, 1e-15);
  const auto r = g.refined(4);
  EXPECT_EQ(r.size(), 80u);
  EXPECT_NEAR(r.h, 0.025, 1e-16);
  EXPECT_NEAR(r.to_density().mass(), 1.0, 1e-14);
}

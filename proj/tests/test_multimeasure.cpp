#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "corput/measure_json.hpp"
#include "corput/multimeasure.hpp"

using namespace corput;

namespace {

double kolmogorov(std::vector<double> xs, const PiecewiseDensity1D& rho) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = rho.cdf(xs[i]);
    d = std::max({d, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
  }
  return d;
}

}  // namespace

TEST(MultiMeasure, CubeMeans) {
  const auto mu = SampleableMeasureND::cube(3);
  const std::size_t count = 1'000'000;
  const auto pts = sample(mu, count, 42);
  for (std::size_t k = 0; k < 3; ++k) {
    double m = 0.0;
    for (std::size_t i = 0; i < count; ++i) m += pts[i * 3 + k];
    m /= count;
    EXPECT_LT(std::abs(m), 3.0 / std::sqrt(12.0) / 1e3);
  }
}

TEST(MultiMeasure, BallAcceptance) {
  const auto mu = SampleableMeasureND::uniform(Ball{{0.0, 0.0, 0.0}, 1.0});
  const double p = (4.0 * std::numbers::pi / 3.0) / 8.0;
  EXPECT_NEAR(mu.acceptance(), p, 1e-15);
  const std::size_t count = 200'000;
  std::uint64_t proposals = 0;
  std::vector<double> x(3);
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng(7, i);
    proposals += mu.draw(rng, x.data());
    EXPECT_LE(x[0] * x[0] + x[1] * x[1] + x[2] * x[2], 1.0);
  }
  const double rate = static_cast<double>(count) / static_cast<double>(proposals);
  const double se = std::sqrt(p * (1 - p) / static_cast<double>(proposals));
  EXPECT_LT(std::abs(rate - p), 3 * se);
}

TEST(MultiMeasure, Determinism) {
  const auto mu = SampleableMeasureND::uniform(Simplex::standard(3));
  const auto a = sample(mu, 50'000, 9);
  const auto b = sample(mu, 50'000, 9);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, sample(mu, 50'000, 10));
  // thread count does not change the draws
  setenv("CORPUT_THREADS", "3", 1);
  const auto c = sample(mu, 50'000, 9);
  unsetenv("CORPUT_THREADS");
  EXPECT_EQ(a, c);
}

TEST(MultiMeasure, ProductInverseCdfKolmogorov) {
  const std::vector<PiecewiseDensity1D> factors{PiecewiseDensity1D::tent(0.0, 2.0),
                                                PiecewiseDensity1D::step({0.0, 0.5, 1.0}, {1.5, 0.5}),
                                                PiecewiseDensity1D({-1.0, 1.0}, {Polynomial1D({0.75, 0.0, -0.75})})};
  const auto mu = SampleableMeasureND::product(factors);
  const std::size_t count = 100'000;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    bool ok = false;
    for (std::uint64_t attempt = 0; attempt < 3 && !ok; ++attempt) {
      const auto pts = sample(mu, count, 100 + attempt);
      std::vector<double> xs(count);
      for (std::size_t i = 0; i < count; ++i) xs[i] = pts[i * factors.size() + k];
      ok = kolmogorov(xs, factors[k]) <= 1.63 / std::sqrt(static_cast<double>(count));
    }
    EXPECT_TRUE(ok) << "factor " << k;
  }
}

TEST(MultiMeasure, InverseCdfRoundTrip) {
  const PiecewiseDensity1D rho({-1.0, 0.0, 0.5, 2.0}, {Polynomial1D({0.5, 0.25}), Polynomial1D::constant(0.0),
                                                       Polynomial1D({0.1, 0.1})});
  const auto r = rho.normalized();
  InverseCdf q(r);
  for (double u : {0.0, 0.01, 0.3, 0.5, 0.77, 0.999}) EXPECT_NEAR(r.cdf(q(u)), u, 1e-12);
}

TEST(MultiMeasure, BodiesAndVolumes) {
  EXPECT_NEAR(*volume(Simplex::standard(3)), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(*volume(Ball{{0.0, 0.0}, 2.0}), 4.0 * std::numbers::pi, 1e-12);
  const HPolytope diamond{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}, {1, 1, 1, 1}, {}};
  const auto bb = bounding_box(diamond);
  EXPECT_NEAR(bb[0].lo, -1.0, 1e-12);
  EXPECT_NEAR(bb[1].hi, 1.0, 1e-12);
  EXPECT_FALSE(volume(diamond).has_value());
  const auto mu = SampleableMeasureND::uniform(diamond);
  EXPECT_NEAR(mu.acceptance(), 0.5, 3e-3);
  const auto unit = scaled_to_unit_volume(Ball{{0.0, 0.0, 0.0}, 1.0});
  EXPECT_NEAR(*volume(unit), 1.0, 1e-12);
  EXPECT_EQ(*SampleableMeasureND::uniform(Box{{{0, 1}, {0, 2}}}).concavity(), 0.5);
  EXPECT_THROW(SampleableMeasureND::uniform(Simplex::standard(10)), std::invalid_argument);
}

TEST(MultiMeasure, JsonConfig) {
  auto mu = measure_from_json(nlohmann::json::parse(R"({"type":"ball","center":[0,0,0],"radius":1})"));
  auto j = measure_to_json(mu);
  EXPECT_EQ(j["type"], "ball");
  EXPECT_NEAR(j["volume"].get<double>(), 4.0 * std::numbers::pi / 3.0, 1e-12);
  mu = measure_from_json(
      nlohmann::json::parse(R"({"type":"product","factors":[{"uniform":[-0.5,0.5]}, "piecewise [0, 1, 2] [t; 2 - t]"]})"));
  EXPECT_EQ(mu.dimension(), 2u);
  EXPECT_THROW(measure_from_json(nlohmann::json::parse(R"({"type":"ball","center":[0],"radius":1,"extra":1})")),
               ConfigError);
  EXPECT_THROW(measure_from_json(nlohmann::json::parse(R"({"type":"torus"})")), ConfigError);
  EXPECT_THROW(measure_from_json(nlohmann::json::parse(R"({"type":"product","factors":["piecewise [0,1] [2]"]})")),
               ConfigError);
  EXPECT_EQ(parse_measure_spec("cube:4").dimension(), 4u);
  EXPECT_EQ(parse_measure_spec("simplex:2").dimension(), 2u);
  EXPECT_THROW(parse_measure_spec("cube:x"), ConfigError);
}

TEST(Krug, OneDimensional) {
  auto r = krug_check(PiecewiseDensity1D::uniform(0.0, 1.0));
  EXPECT_NEAR(r.tv_lhs, 2.0, 1e-15);
  EXPECT_NEAR(r.krug_rhs, 2.0, 1e-15);
  EXPECT_TRUE(r.log_concave);
  r = krug_check(PiecewiseDensity1D::tent(0.0, 2.0));
  EXPECT_NEAR(r.tv_lhs, 2.0, 1e-9);
  EXPECT_NEAR(r.krug_rhs, 2.0, 1e-9);
  r = krug_check(PiecewiseDensity1D::step({0.0, 1.0, 2.0, 3.0}, {0.5, 0.0, 0.5}));
  EXPECT_FALSE(r.log_concave);
}

TEST(Krug, Disk) {
  const Density2D disk{[](double x, double y) { return x * x + y * y <= 1.0 ? 1.0 / std::numbers::pi : 0.0; },
                       {-1.0, 1.0},
                       {-1.0, 1.0}};
  const auto r = krug_check(disk, {1.0, 0.0});
  EXPECT_NEAR(r.tv_lhs, 4.0 / std::numbers::pi, 0.01 * 4.0 / std::numbers::pi);
  EXPECT_NEAR(r.krug_rhs, 4.0 / std::numbers::pi, 0.01 * 4.0 / std::numbers::pi);
  EXPECT_TRUE(r.log_concave);
}

TEST(Krug, SquareDiagonal) {
  const Density2D square{[](double, double) { return 1.0; }, {0.0, 1.0}, {0.0, 1.0}};
  const double r2 = 1.0 / std::sqrt(2.0);
  const auto r = krug_check(square, {r2, r2});
  EXPECT_NEAR(r.tv_lhs, 2.0 * std::sqrt(2.0), 0.01 * 2.0 * std::sqrt(2.0));
  EXPECT_NEAR(r.krug_rhs, 2.0 * std::sqrt(2.0), 0.01 * 2.0 * std::sqrt(2.0));
}

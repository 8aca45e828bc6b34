#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>

#include "corput/oscint.hpp"
#include "corput/poly_text.hpp"

using namespace corput;

namespace {

const PiecewiseDensity1D kUnit = PiecewiseDensity1D::uniform(0.0, 1.0);

SampleableMeasureND unit_interval() { return SampleableMeasureND::product({kUnit}); }

// composite 16-point Gauss-Legendre on equal panels, no adaptivity
std::complex<double> uniform_panels(const std::function<double(double)>& f, double t, double a, double b, int panels) {
  const auto& gl = gauss_legendre16();
  std::complex<double> s = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < 16; ++i) {
      const double x = c + 0.5 * h * gl.nodes[i];
      s += 0.5 * h * gl.weights[i] * std::exp(std::complex<double>(0.0, t * f(x)));
    }
  }
  return s;
}

}  // namespace

TEST(OscInt, LinearPhaseClosedForm) {
  const auto v = osc_integral(unit_interval(), parse_polynomial("x1", 1), std::numbers::pi);
  EXPECT_EQ(v.method, OscMethod::Exact1D);
  EXPECT_NEAR(std::abs(v.value), 2.0 / std::numbers::pi, 1e-9);
  for (double t : {0.5, 7.0, 123.4}) {
    const auto w = osc_integral(unit_interval(), parse_polynomial("x1", 1), t);
    EXPECT_NEAR(std::abs(w.value), std::abs(2.0 * std::sin(t / 2) / t), 1e-9);
  }
}

TEST(OscInt, ZeroFrequencyIsMass) {
  const auto x = parse_polynomial("x1^2 - 3*x1*x2", 2);
  for (const auto& mu : {SampleableMeasureND::cube(2), SampleableMeasureND::uniform(Ball{{0.0, 0.0}, 1.0})}) {
    const auto v = osc_integral(mu, x, 0.0, {.count = 20'000});
    EXPECT_NEAR(v.value.real(), 1.0, 1e-12);
    EXPECT_NEAR(v.value.imag(), 0.0, 1e-12);
  }
  EXPECT_NEAR(std::abs(osc_integral(unit_interval(), parse_polynomial("x1^3", 1), 0.0).value - 1.0), 0.0, 1e-14);
}

TEST(OscInt, QuadraticAgainstDenserPanels) {
  const auto v = osc_integral(unit_interval(), parse_polynomial("x1^2", 1), 100.0);
  const auto ref = uniform_panels([](double x) { return x * x; }, 100.0, 0.0, 1.0, 4 * 64);
  EXPECT_LT(std::abs(v.value - ref), 1e-8);
  EXPECT_LT(v.abs_error, 1e-8);
}

TEST(OscInt, StepDensityWithStationaryPoint) {
  const auto rho = PiecewiseDensity1D({-1.0, 0.25, 1.0}, {Polynomial1D({0.3}), Polynomial1D({0.9})});
  const Polynomial1D g({0.0, -0.5, 0.0, 1.0});
  const double t = 250.0;
  const auto v = *osc_integral_exact(rho, g, t);
  const auto ref = 0.3 * uniform_panels([&](double x) { return g(x); }, t, -1.0, 0.25, 2000) +
                   0.9 * uniform_panels([&](double x) { return g(x); }, t, 0.25, 1.0, 2000);
  EXPECT_LT(std::abs(v.value - ref), 1e-10);
}

TEST(OscInt, ConjugateSymmetry) {
  const auto g = parse_polynomial("x1^3 - x1", 1);
  for (double t : {1.0, 33.0, 1000.0}) {
    const auto p = osc_integral(unit_interval(), g, t), m = osc_integral(unit_interval(), g, -t);
    EXPECT_LT(std::abs(m.value - std::conj(p.value)), 1e-12);
  }
  const auto f = parse_polynomial("x1*x2 + x2^2", 2);
  const auto p = osc_integral(SampleableMeasureND::cube(2), f, 20.0), m = osc_integral(SampleableMeasureND::cube(2), f, -20.0);
  EXPECT_EQ(p.method, OscMethod::Tensor);
  EXPECT_LT(std::abs(m.value - std::conj(p.value)), 1e-12);

  const OscOptions mc{.method = OscMethod::MonteCarlo, .count = 50'000, .seed = 9};
  const auto sweep = osc_sweep(SampleableMeasureND::cube(3), parse_polynomial("x1*x2*x3 + x1^2", 3), {-17.0, 17.0}, mc);
  const double re0 = sweep[0].value.real(), re1 = sweep[1].value.real();
  const double im0 = sweep[0].value.imag(), im1 = -sweep[1].value.imag();
  EXPECT_EQ(std::memcmp(&re0, &re1, sizeof(double)), 0);
  EXPECT_EQ(std::memcmp(&im0, &im1, sizeof(double)), 0);
}

TEST(OscInt, TensorMatchesProductOfOneDimensional) {
  // x1 + x2 + x3 on a cube factorizes into three one-dimensional integrals
  const auto f = parse_polynomial("x1 + x2 + x3", 3);
  for (double t : {3.0, 40.0}) {
    const auto v = osc_integral(SampleableMeasureND::cube(3), f, t);
    EXPECT_EQ(v.method, OscMethod::Tensor);
    const double s = std::sin(t / 2) / (t / 2);
    EXPECT_NEAR(v.value.real(), s * s * s, 1e-10);
    EXPECT_NEAR(v.value.imag(), 0.0, 1e-10);
  }
  EXPECT_THROW(osc_integral(SampleableMeasureND::cube(4), parse_polynomial("x1", 4), 1.0, {.method = OscMethod::Tensor}),
               std::invalid_argument);
}

TEST(OscInt, MonteCarloWithinErrorAndModulusBound) {
  const auto f = parse_polynomial("x1 + x2", 2);
  const double t = 6.0, s = std::sin(t / 2) / (t / 2);
  const auto v = osc_integral(SampleableMeasureND::cube(2), f, t, {.method = OscMethod::MonteCarlo, .count = 200'000, .seed = 3});
  EXPECT_NEAR(v.value.real(), s * s, 3 * v.abs_error);
  EXPECT_NEAR(v.abs_error, 1.0 / std::sqrt(200'000.0), 1e-15);
  const auto ball = SampleableMeasureND::uniform(Ball{{0.0, 0.0, 0.0}, 1.0});
  for (const auto& w : osc_sweep(ball, parse_polynomial("x1^2 - x2*x3", 3), log_space(1.0, 100.0, 5), {.count = 10'000}))
    EXPECT_LE(std::abs(w.value), 1.0 + w.abs_error);
}

TEST(OscInt, PanelBudgetFallsBackToMonteCarlo) {
  const auto f = parse_polynomial("x1", 1);
  const auto v = osc_integral(unit_interval(), f, 1e9, {.count = 20'000, .panel_cap = 1000});
  EXPECT_EQ(v.method, OscMethod::MonteCarlo);
  EXPECT_FALSE(v.warning.empty());
  EXPECT_FALSE(osc_integral_exact(kUnit, Polynomial1D({0.0, 1.0}), 1e9, 1000).has_value());
}

TEST(NormalizePhase, Examples) {
  const auto q1 = SampleableMeasureND::cube(1);
  const auto lin = normalize_phase(q1, parse_polynomial("x1", 1));
  EXPECT_NEAR(lin.mean, 0.0, 1e-15);
  EXPECT_NEAR(lin.abs_dev, 0.25, 1e-15);
  EXPECT_NEAR(lin.phase.coefficient({1}), 4.0, 1e-12);
  EXPECT_NEAR(lin.phase.coefficient({0}), 0.0, 1e-12);

  EXPECT_THROW(normalize_phase(q1, Polynomial::constant(1, 3.0)), std::invalid_argument);
  EXPECT_THROW(normalize_phase(SampleableMeasureND::cube(2), Polynomial::constant(2, -1.0)), std::invalid_argument);

  // |x^2 - r^2| on [-1/2, 1/2] with r^2 = 1/12 splits at +-r: 8r^3/3 + 1/12 - r^2
  const double r = 1.0 / std::sqrt(12.0);
  const double s = 8 * r * r * r / 3 + 1.0 / 12 - r * r;
  const auto sq = normalize_phase(q1, parse_polynomial("x1^2", 1));
  EXPECT_NEAR(sq.mean, 1.0 / 12, 1e-15);
  EXPECT_NEAR(sq.abs_dev, s, 1e-14);
  EXPECT_NEAR(s, 1.0 / (9 * std::sqrt(3.0)), 1e-15);
  EXPECT_EQ(sq.method, "exact");
}

TEST(NormalizePhase, TwoDimensionalQuadratureAndMonteCarlo) {
  // x1 + x2 on Q^2 is tent distributed on [-1, 1]: E|S| = 1/3
  const auto n2 = normalize_phase(SampleableMeasureND::cube(2), parse_polynomial("x1 + x2", 2));
  EXPECT_EQ(n2.method, "quadrature");
  EXPECT_NEAR(n2.abs_dev, 1.0 / 3, 1e-10);
  // E|x1 x2| = 1/16
  EXPECT_NEAR(normalize_phase(SampleableMeasureND::cube(2), parse_polynomial("x1*x2", 2)).abs_dev, 1.0 / 16, 1e-10);
  // x1 + x2 + x3 on Q^3: E|S| by MC against 1/4 - ... computed by one-dimensional convolution below
  const auto n3 = normalize_phase(SampleableMeasureND::cube(3), parse_polynomial("x1 + x2 + x3", 3), 200'000, 1);
  EXPECT_EQ(n3.method, "mc");
  // density of the sum of three U[-1/2,1/2] on [1/2, 3/2] is (3/2 - s)^2 / 2, on [0, 1/2] it is 3/4 - s^2
  const double exact = 2 * ((3.0 / 4) * (1.0 / 8) - (1.0 / 4) * (1.0 / 16) +
                            [] {
                              // int_{1/2}^{3/2} s (3/2 - s)^2 / 2 ds with u = 3/2 - s
                              return 0.5 * (1.5 * (1.0 / 3) - 0.25);
                            }());
  EXPECT_NEAR(n3.abs_dev, exact, 4 * n3.abs_dev_stderr);
  EXPECT_NEAR(n3.mean, 0.0, 1e-15);
}

TEST(DecayFit, SyntheticPowerLaws) {
  const auto t = log_space(10.0, 1e4, 20);
  std::vector<double> a, b;
  for (double x : t) {
    a.push_back(std::pow(x, -0.5));
    b.push_back(5.0 * std::pow(x, -1.0 / 3));
  }
  EXPECT_NEAR(decay_fit(t, a).slope, -0.5, 1e-3);
  const auto fb = decay_fit(t, b, 3.0);
  EXPECT_NEAR(fb.slope, -1.0 / 3, 1e-3);
  EXPECT_NEAR(fb.constant(), 5.0, 1e-3);
  EXPECT_NEAR(fb.sup_scaled, 5.0, 1e-9);
  EXPECT_EQ(fb.points, 20u);
  EXPECT_GT(fb.r_squared, 0.999999);
}

TEST(DecayFit, WindowAndNoiseFloor) {
  const auto t = log_space(1.0, 1e4, 24);
  std::vector<double> v;
  for (double x : t) v.push_back(std::pow(x, -1.0));
  const auto w = decay_fit(t, v, 0.0, 10.0, 1000.0);
  EXPECT_GE(w.t_min, 10.0);
  EXPECT_LE(w.t_max, 1000.0);
  EXPECT_THROW(decay_fit(t, v, 0.0, 0.0, 1e9, 1.0), std::invalid_argument);
  EXPECT_THROW(decay_fit({1, 2, 3}, {1, 1, 1}), std::invalid_argument);
  // values below twice the floor are trimmed from the fit
  const auto trimmed = decay_fit(t, v, 0.0, 0.0, 1e9, 1e-3);
  EXPECT_LE(trimmed.t_max, 500.0);
}

TEST(DecayFit, QuadraticPhaseDecaysLikeInverseSqrt) {
  const auto t = log_space(10.0, 1e4, 24);
  const auto vals = osc_sweep(unit_interval(), parse_polynomial("x1^2", 1), t);
  std::vector<double> mag;
  for (const auto& v : vals) mag.push_back(std::abs(v.value));
  EXPECT_LE(decay_fit(t, mag, 2.0).slope, -0.45);
}

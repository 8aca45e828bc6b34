// Prints |I(t)| for f = t^k / k! on U[0, 1] next to t^(-1/k), then sigma and
// omega of a step density at a few scales.

#include <cmath>
#include <cstdio>

#include "corput/density1d.hpp"
#include "corput/oscint.hpp"
#include "corput/sigma.hpp"

using namespace corput;

int main() {
  const auto mu = SampleableMeasureND::product({PiecewiseDensity1D::uniform(0.0, 1.0)});
  for (int k = 2; k <= 4; ++k) {
    std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
    c.back() = 1.0 / std::tgamma(k + 1.0);
    const auto f = Polynomial::from_1d(Polynomial1D(c));
    std::printf("k = %d\n%10s %14s %14s\n", k, "t", "|I(t)|", "t^(-1/k)");
    for (const auto& v : osc_sweep(mu, f, log_space(10.0, 1e4, 7)))
      std::printf("%10.1f %14.6e %14.6e\n", v.t, std::abs(v.value), std::pow(v.t, -1.0 / k));
  }

  const auto rho = PiecewiseDensity1D::step({0.0, 0.3, 0.5, 1.0}, {0.5, 3.0, 0.5});
  std::printf("\n%8s %12s %12s %8s\n", "eps", "omega", "sigma", "ratio");
  for (double eps : {0.01, 0.05, 0.1, 0.3}) {
    const double w = omega(rho, eps), s = sigma(rho, eps);
    std::printf("%8.2f %12.6f %12.6f %8.4f\n", eps, w, s, s / w);
  }
}

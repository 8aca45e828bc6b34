#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "corput/density1d.hpp"
#include "corput/multimeasure.hpp"
#include "corput/pushforward.hpp"

namespace corput {

/// Monte Carlo value with its standard error (zero for exact values).
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// rho({t : |g(t)| <= eps}), exact.
inline double sublevel_measure(const PiecewiseDensity1D& rho, const Polynomial1D& g, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("sublevel_measure: eps must be positive");
  const Interval s = rho.support();
  CompensatedSum acc;
  for (const auto& band : level_band(g, s.lo, s.hi, -eps, eps)) acc.add(rho.mass_between(band.lo, band.hi));
  return acc.value();
}

/// mu(|f| <= eps) by Monte Carlo, stderr sqrt(p (1 - p) / count).
inline Estimate sublevel_measure(const SampleableMeasureND& mu, const Polynomial& f, double eps, std::size_t count,
                                 std::uint64_t seed) {
  if (!(eps > 0.0)) throw std::invalid_argument("sublevel_measure: eps must be positive");
  if (count < 1) throw std::invalid_argument("sublevel_measure: count must be >= 1");
  const auto v = sample_values(mu, f, count, seed);
  const auto hits = std::count_if(v.begin(), v.end(), [eps](double x) { return std::abs(x) <= eps; });
  const double n = static_cast<double>(count), p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

/// The explicit sub-level bound 8 e k ||rho||_inf eps^{1/k}.
inline double sublevel_bound(int k, double sup_norm, double eps) {
  return 8.0 * std::numbers::e * k * sup_norm * std::pow(eps, 1.0 / k);
}

/// Points a_0 < ... < a_k with weights c_m = (-1)^k k! prod_{j != m} (a_j - a_m)^{-1},
/// so that sum c_m p(a_m) = k! lead(p) for deg p = k and 0 for deg p < k.
struct DividedDiffCert {
  std::vector<double> points;
  std::vector<double> coefficients;

  double apply(const Polynomial1D& p) const {
    CompensatedSum s;
    for (std::size_t m = 0; m < points.size(); ++m) s.add(coefficients[m] * p(points[m]));
    return s.value();
  }
};

inline DividedDiffCert divided_diff(std::vector<double> points) {
  if (points.size() < 2) throw std::invalid_argument("divided_diff: need at least two points");
  std::sort(points.begin(), points.end());
  const double span = points.back() - points.front();
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (!(points[i + 1] - points[i] > 1e-10 * span)) throw std::invalid_argument("divided_diff: coincident points");
  const int k = static_cast<int>(points.size()) - 1;
  const double sign = k % 2 == 0 ? 1.0 : -1.0;
  double kfact = 1.0;
  for (int j = 2; j <= k; ++j) kfact *= j;
  DividedDiffCert out{points, {}};
  for (std::size_t m = 0; m < points.size(); ++m) {
    double prod = 1.0;
    for (std::size_t j = 0; j < points.size(); ++j)
      if (j != m) prod *= points[j] - points[m];
    out.coefficients.push_back(sign * kfact / prod);
  }
  return out;
}

struct QuantileSelection {
  std::vector<double> points;
  double mass_e = 0.0;
  /// min over m of ||rho||_inf^k prod_{j != m} |a_j - a_m|
  double min_product = 0.0;
  /// (mu(E) / 4e)^k
  double threshold = 0.0;
  bool holds() const { return min_product >= threshold; }
};

/// a_j with F_E(a_j) = (j / k) mu(E), F_E(x) = rho((-inf, x] cap E); each a_j
/// is the leftmost solution, found by bisection on the exact CDF, so it lies
/// in the closure of E.
inline QuantileSelection quantile_points(const PiecewiseDensity1D& rho, std::vector<Interval> e, int k) {
  if (k < 1) throw std::invalid_argument("quantile_points: k must be >= 1");
  if (e.empty()) throw std::invalid_argument("quantile_points: empty set");
  std::sort(e.begin(), e.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  auto f_e = [&](double x) {
    CompensatedSum s;
    for (const auto& iv : e) s.add(rho.mass_between(iv.lo, std::min(iv.hi, x)));
    return s.value();
  };
  double lo = e.front().lo, hi = e.front().hi;
  for (const auto& iv : e) hi = std::max(hi, iv.hi);
  QuantileSelection out;
  out.mass_e = f_e(hi);
  if (!(out.mass_e > 0.0)) throw std::invalid_argument("quantile_points: mu(E) = 0");
  for (int j = 0; j <= k; ++j) {
    const double target = out.mass_e * j / k;
    double a = lo, b = hi;
    if (f_e(a) >= target) {
      out.points.push_back(a);
      continue;
    }
    for (int it = 0; it < 200 && b - a > 0.0; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      (f_e(mid) >= target ? b : a) = mid;
    }
    out.points.push_back(b);
  }
  const double sup = rho.sup_norm();
  out.min_product = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < out.points.size(); ++m) {
    double prod = std::pow(sup, k);
    for (std::size_t j = 0; j < out.points.size(); ++j)
      if (j != m) prod *= std::abs(out.points[j] - out.points[m]);
    out.min_product = std::min(out.min_product, prod);
  }
  out.threshold = std::pow(out.mass_e / (4.0 * std::numbers::e), k);
  return out;
}

struct CwRatios {
  std::vector<double> t;
  std::vector<double> ratio;
  std::vector<double> ratio_stderr;
  double l2_norm = 0.0;
  int degree = 0;
  double max_ratio = 0.0;
  std::size_t argmax = 0;
};

inline std::vector<double> default_cw_grid() { return log_space(1e-4, 1.0, 16); }

namespace detail {

inline void finish_cw(CwRatios& r) {
  for (std::size_t i = 0; i < r.ratio.size(); ++i)
    if (r.ratio[i] > r.max_ratio) {
      r.max_ratio = r.ratio[i];
      r.argmax = i;
    }
}

}  // namespace detail

/// ||f||_{L2(mu)}^{1/d} mu(|f| <= t) / t^{1/d}, exact in one dimension.
inline CwRatios cw_ratio(const PiecewiseDensity1D& rho, const Polynomial1D& g, std::vector<double> t_grid = default_cw_grid()) {
  if (g.degree() < 1) throw std::invalid_argument("cw_ratio: f must be non-constant");
  CwRatios r;
  r.degree = g.degree();
  r.l2_norm = std::sqrt(rho.integrate_against(g * g));
  if (!(r.l2_norm > 0.0)) throw std::invalid_argument("cw_ratio: vanishing L2 norm");
  const double d = r.degree;
  for (double t : t_grid) {
    r.t.push_back(t);
    r.ratio.push_back(std::pow(r.l2_norm, 1.0 / d) * sublevel_measure(rho, g, t) / std::pow(t, 1.0 / d));
    r.ratio_stderr.push_back(0.0);
  }
  detail::finish_cw(r);
  return r;
}

/// Monte Carlo version. The L2 norm is exact for product measures (moments of
/// the factors) and estimated from the same draws for bodies.
inline CwRatios cw_ratio(const SampleableMeasureND& mu, const Polynomial& f, std::size_t count, std::uint64_t seed,
                         std::vector<double> t_grid = default_cw_grid()) {
  if (f.degree() < 1) throw std::invalid_argument("cw_ratio: f must be non-constant");
  auto v = sample_values(mu, f, count, seed);
  CwRatios r;
  r.degree = f.degree();
  if (mu.is_product()) {
    std::vector<std::vector<double>> moments;
    for (const auto& rho : mu.factors()) moments.push_back(rho.moments(2 * f.individual_degree()));
    r.l2_norm = std::sqrt(std::max(0.0, product_moment(f * f, moments)));
  } else {
    CompensatedSum s;
    for (double x : v) s.add(x * x);
    r.l2_norm = std::sqrt(s.value() / static_cast<double>(count));
  }
  if (!(r.l2_norm > 0.0)) throw std::invalid_argument("cw_ratio: vanishing L2 norm");
  for (double& x : v) x = std::abs(x);
  std::sort(v.begin(), v.end());
  const double d = r.degree, n = static_cast<double>(count);
  const double scale = std::pow(r.l2_norm, 1.0 / d);
  for (double t : t_grid) {
    const double p = static_cast<double>(std::upper_bound(v.begin(), v.end(), t) - v.begin()) / n;
    const double shape = std::pow(t, 1.0 / d);
    r.t.push_back(t);
    r.ratio.push_back(scale * p / shape);
    r.ratio_stderr.push_back(scale * std::sqrt(p * (1.0 - p) / n) / shape);
  }
  detail::finish_cw(r);
  return r;
}

}  // namespace corput

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "corput/density1d.hpp"
#include "corput/multimeasure.hpp"
#include "corput/numeric.hpp"
#include "corput/polynomial.hpp"

namespace corput {

/// Image of a 1-D density under a polynomial map, resolved exactly: the
/// support is cut at the density breakpoints and the critical points of g,
/// so g is monotone on every cell and {g <= s} is found by one bisection per cell.
class ExactPushforward1D {
 public:
  ExactPushforward1D(PiecewiseDensity1D rho, Polynomial1D g) : rho_(std::move(rho)), g_(std::move(g)) {
    if (g_.degree() < 1) throw std::invalid_argument("pushforward: g must be non-constant");
    const auto& b = rho_.breakpoints();
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      const auto pts = monotone_breakpoints(g_, b[i], b[i + 1]);
      for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        Cell c{pts[k], pts[k + 1], g_(pts[k]), g_(pts[k + 1]), rho_.mass_between(pts[k], pts[k + 1])};
        cells_.push_back(c);
        if (k > 0) critical_.push_back(c.gu);
      }
    }
    // critical points that sit on a breakpoint or a support end
    const Polynomial1D dg = g_.derivative();
    const double tiny = 1e-12 * std::max(1.0, dg.max_abs_coefficient());
    for (double t : b)
      if (std::abs(dg(t)) <= tiny) critical_.push_back(g_(t));
    std::sort(critical_.begin(), critical_.end());
    critical_.erase(std::unique(critical_.begin(), critical_.end()), critical_.end());
    lo_ = hi_ = cells_.front().gu;
    for (const auto& c : cells_) {
      lo_ = std::min({lo_, c.gu, c.gv});
      hi_ = std::max({hi_, c.gu, c.gv});
    }
  }

  const PiecewiseDensity1D& density() const { return rho_; }
  const Polynomial1D& map() const { return g_; }
  double mass() const { return rho_.mass(); }
  /// Values g(t*) at interior critical points t* of g on the support.
  const std::vector<double>& critical_values() const { return critical_; }
  /// Range of g over the support.
  Interval range() const { return {lo_, hi_}; }

  /// F(s) = rho({t : g(t) <= s}).
  double cdf(double s) const {
    if (s < lo_) return 0.0;
    if (s >= hi_) return mass();
    CompensatedSum acc;
    for (const auto& c : cells_) {
      const double gmin = std::min(c.gu, c.gv), gmax = std::max(c.gu, c.gv);
      if (s >= gmax) {
        acc.add(c.mass);
      } else if (s >= gmin) {
        const double x = solve_monotone(g_, c.u, c.v, s);
        acc.add(c.gv >= c.gu ? rho_.mass_between(c.u, x) : rho_.mass_between(x, c.v));
      }
    }
    return acc.value();
  }

  /// Root-sum density sum_{g(t) = s} rho(t) / |g'(t)|.
  double density_at(double s) const {
    const Polynomial1D dg = g_.derivative();
    CompensatedSum acc;
    for (const auto& c : cells_) {
      // t ranges over [u, v) so a root on a shared cell edge is counted once
      const bool hit = c.gv >= c.gu ? (s >= c.gu && s < c.gv) : (s > c.gv && s <= c.gu);
      if (!hit) continue;
      const double x = solve_monotone(g_, c.u, c.v, s);
      const double slope = std::abs(dg(x));
      if (slope > 0.0) acc.add(rho_(x) / slope);
    }
    return acc.value();
  }

 private:
  struct Cell {
    double u, v, gu, gv, mass;
  };

  PiecewiseDensity1D rho_;
  Polynomial1D g_;
  std::vector<Cell> cells_;
  std::vector<double> critical_;
  double lo_ = 0.0, hi_ = 0.0;
};

inline double pushforward_cdf_1d(const PiecewiseDensity1D& rho, const Polynomial1D& g, double s) {
  return ExactPushforward1D(rho, g).cdf(s);
}

/// Pointwise pushforward density on `s_grid`; nullopt within two grid steps
/// of a critical value, where the density may be singular.
inline std::vector<std::optional<double>> pushforward_density_1d(const PiecewiseDensity1D& rho, const Polynomial1D& g,
                                                                 const std::vector<double>& s_grid) {
  const ExactPushforward1D pf(rho, g);
  std::vector<std::optional<double>> out;
  out.reserve(s_grid.size());
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    double step = std::numeric_limits<double>::infinity();
    if (i > 0) step = std::min(step, std::abs(s_grid[i] - s_grid[i - 1]));
    if (i + 1 < s_grid.size()) step = std::min(step, std::abs(s_grid[i + 1] - s_grid[i]));
    if (!std::isfinite(step)) step = 0.0;
    bool excluded = false;
    for (double c : pf.critical_values()) excluded = excluded || std::abs(s_grid[i] - c) <= 2.0 * step;
    out.push_back(excluded ? std::nullopt : std::optional<double>(pf.density_at(s_grid[i])));
  }
  return out;
}

/// d_TV = int |p_f - p_g| and d_K = int |F_f - F_g| between the images of rho
/// under f and g. Both integrands are resolved with 16-point Gauss-Legendre
/// panels between the critical values and range ends of the two maps.
inline Distances image_distances(const PiecewiseDensity1D& rho, const Polynomial1D& f, const Polynomial1D& g,
                                 std::size_t panels_per_piece = 2048) {
  const ExactPushforward1D pf(rho, f), pg(rho, g);
  std::vector<double> cuts{pf.range().lo, pf.range().hi, pg.range().lo, pg.range().hi};
  for (double c : pf.critical_values()) cuts.push_back(c);
  for (double c : pg.critical_values()) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const auto& gl = gauss_legendre16();
  CompensatedSum tv, kd;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double h = (cuts[i + 1] - cuts[i]) / static_cast<double>(panels_per_piece);
    for (std::size_t p = 0; p < panels_per_piece; ++p) {
      const double c = cuts[i] + (static_cast<double>(p) + 0.5) * h;
      for (std::size_t q = 0; q < 16; ++q) {
        const double s = c + 0.5 * h * gl.nodes[q], w = 0.5 * h * gl.weights[q];
        tv.add(w * std::abs(pf.density_at(s) - pg.density_at(s)));
        kd.add(w * std::abs(pf.cdf(s) - pg.cdf(s)));
      }
    }
  }
  return {tv.value(), kd.value()};
}

/// Image measure on a uniform grid, with its CDF. For MC results the cell
/// weights carry a per-cell standard error.
struct PushforwardResult {
  GridMeasure1D grid_density;
  std::vector<double> cell_stderr;
  std::function<double(double)> cdf;
  std::string method;
  std::size_t mc_count = 0;
  std::uint64_t seed = 0;
  /// Samples discarded by the quantile clip (MC only).
  std::size_t clipped = 0;
};

/// Exact cell masses of rho o g^{-1} on `bins` equal cells over the range of g.
inline PushforwardResult pushforward_exact_1d(const PiecewiseDensity1D& rho, const Polynomial1D& g, std::size_t bins) {
  if (bins < 1) throw std::invalid_argument("pushforward: bins must be >= 1");
  auto pf = std::make_shared<ExactPushforward1D>(rho, g);
  const Interval r = pf->range();
  if (!(r.hi > r.lo)) throw std::invalid_argument("pushforward: g is constant on the support");
  const double h = (r.hi - r.lo) / static_cast<double>(bins);
  std::vector<double> w(bins);
  double prev = 0.0;
  for (std::size_t j = 0; j < bins; ++j) {
    const double c = j + 1 == bins ? pf->mass() : pf->cdf(r.lo + h * static_cast<double>(j + 1));
    w[j] = c - prev;
    prev = c;
  }
  PushforwardResult out;
  out.grid_density = GridMeasure1D(r.lo, h, std::move(w));
  out.cdf = [pf](double s) { return pf->cdf(s); };
  out.method = "exact1d";
  return out;
}

/// f evaluated at `count` draws of mu (draw i from stream i of `seed`).
inline std::vector<double> sample_values(const SampleableMeasureND& mu, const Polynomial& f, std::size_t count,
                                         std::uint64_t seed) {
  if (static_cast<std::size_t>(f.dimension()) != mu.dimension())
    throw std::invalid_argument("sample_values: dimension mismatch");
  const PolynomialEvaluator ev(f);
  struct Eval {
    const PolynomialEvaluator* ev;
    std::vector<double> scratch;
    double operator()(const double* x) { return (*ev)(x, scratch); }
  };
  return sample_map(mu, count, seed, Eval{&ev, {}});
}

/// Error budget added to sigma / omega tolerances computed on an MC histogram.
inline double mc_error_budget(std::size_t bins, std::size_t count) {
  return 2.0 * std::sqrt(static_cast<double>(bins) / static_cast<double>(count));
}

/// Histogram of f(X), X ~ mu, on `bins` equal cells between the 1e-6 and
/// 1 - 1e-6 empirical quantiles, plus the empirical CDF of all draws.
inline PushforwardResult pushforward_mc(const SampleableMeasureND& mu, const Polynomial& f, std::size_t count,
                                        std::size_t bins = 512, std::uint64_t seed = 0) {
  if (count < 10'000) throw std::invalid_argument("pushforward_mc: count must be >= 1e4");
  if (bins < 1) throw std::invalid_argument("pushforward_mc: bins must be >= 1");
  if (static_cast<std::size_t>(f.dimension()) != mu.dimension())
    throw std::invalid_argument("pushforward_mc: dimension mismatch");
  auto values = std::make_shared<std::vector<double>>(sample_values(mu, f, count, seed));
  std::sort(values->begin(), values->end());
  const auto q = [&](double p) {
    const auto i = static_cast<std::size_t>(std::floor(p * static_cast<double>(count - 1)));
    return (*values)[i];
  };
  double lo = q(1e-6), hi = q(1.0 - 1e-6);
  if (!(hi > lo)) {
    lo = values->front();
    hi = values->back();
  }
  if (!(hi > lo)) throw std::invalid_argument("pushforward_mc: degenerate sample range (f constant on the support)");
  const double h = (hi - lo) / static_cast<double>(bins);
  std::vector<double> counts(bins, 0.0);
  std::size_t clipped = 0;
  for (double v : *values) {
    if (v < lo || v > hi) {
      ++clipped;
      continue;
    }
    auto j = static_cast<std::size_t>((v - lo) / h);
    counts[std::min(j, bins - 1)] += 1.0;
  }
  const double n = static_cast<double>(count);
  PushforwardResult out;
  out.cell_stderr.resize(bins);
  for (std::size_t j = 0; j < bins; ++j) {
    const double p = counts[j] / n;
    counts[j] = p;
    out.cell_stderr[j] = std::sqrt(p * (1.0 - p) / n);
  }
  out.grid_density = GridMeasure1D(lo, h, std::move(counts));
  out.cdf = [values](double s) {
    return static_cast<double>(std::upper_bound(values->begin(), values->end(), s) - values->begin()) /
           static_cast<double>(values->size());
  };
  out.method = "mc";
  out.mc_count = count;
  out.seed = seed;
  out.clipped = clipped;
  return out;
}

}  // namespace corput

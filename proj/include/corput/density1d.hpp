#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "corput/numeric.hpp"
#include "corput/polynomial1d.hpp"

namespace corput {

/// Compactly supported 1-D density given by polynomial pieces on
/// [t0, t1), ..., [t_{M-1}, t_M] and zero elsewhere. Pieces are polynomials
/// in the absolute coordinate t. Signed densities are allowed.
class PiecewiseDensity1D {
 public:
  PiecewiseDensity1D(std::vector<double> breakpoints, std::vector<Polynomial1D> pieces)
      : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (breaks_.size() < 2) throw std::invalid_argument("PiecewiseDensity1D: need at least two breakpoints");
    if (pieces_.size() + 1 != breaks_.size())
      throw std::invalid_argument("PiecewiseDensity1D: need one piece per interval");
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
      if (!(breaks_[i] < breaks_[i + 1]))
        throw std::invalid_argument("PiecewiseDensity1D: breakpoints must be strictly increasing");
    CompensatedSum s;
    cumulative_.assign(1, 0.0);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      s.add(pieces_[i].integrate(breaks_[i], breaks_[i + 1]));
      cumulative_.push_back(s.value());
    }
    mass_ = s.value();
  }

  static PiecewiseDensity1D uniform(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("uniform: need a < b");
    return PiecewiseDensity1D({a, b}, {Polynomial1D::constant(1.0 / (b - a))});
  }
  static PiecewiseDensity1D step(std::vector<double> breakpoints, const std::vector<double>& values) {
    std::vector<Polynomial1D> pieces;
    pieces.reserve(values.size());
    for (double v : values) pieces.push_back(Polynomial1D::constant(v));
    return PiecewiseDensity1D(std::move(breakpoints), std::move(pieces));
  }
  /// Symmetric triangular density on [a, b].
  static PiecewiseDensity1D tent(double a, double b) {
    const double m = 0.5 * (a + b), hgt = 2.0 / (b - a), slope = hgt / (m - a);
    return PiecewiseDensity1D({a, m, b}, {Polynomial1D({-slope * a, slope}), Polynomial1D({slope * b, -slope})});
  }

  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<Polynomial1D>& pieces() const { return pieces_; }
  std::size_t piece_count() const { return pieces_.size(); }
  double mass() const { return mass_; }
  Interval support() const { return {breaks_.front(), breaks_.back()}; }

  bool is_piecewise_constant() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Polynomial1D& p) { return p.degree() == 0; });
  }

  /// Index of the piece containing x, or nullopt outside [t0, tM).
  std::optional<std::size_t> piece_index(double x) const {
    if (x < breaks_.front() || x >= breaks_.back()) return std::nullopt;
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    return static_cast<std::size_t>(it - breaks_.begin()) - 1;
  }

  /// Right-continuous evaluation.
  double operator()(double x) const {
    auto i = piece_index(x);
    return i ? pieces_[*i](x) : 0.0;
  }

  double cdf(double x) const {
    if (x <= breaks_.front()) return 0.0;
    if (x >= breaks_.back()) return mass_;
    const std::size_t i = *piece_index(x);
    return cumulative_[i] + pieces_[i].integrate(breaks_[i], x);
  }

  /// Mass of [a, b].
  double mass_between(double a, double b) const { return b <= a ? 0.0 : cdf(b) - cdf(a); }

  double sup_norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      auto [lo, hi] = range_on(pieces_[i], breaks_[i], breaks_[i + 1]);
      m = std::max({m, std::abs(lo), std::abs(hi)});
    }
    return m;
  }

  /// Monomial moments int t^j rho(t) dt for j = 0..max_power.
  std::vector<double> moments(int max_power) const {
    std::vector<double> out(static_cast<std::size_t>(max_power) + 1, 0.0);
    for (int j = 0; j <= max_power; ++j) {
      CompensatedSum s;
      for (std::size_t i = 0; i < pieces_.size(); ++i)
        s.add((pieces_[i] * Polynomial1D::monomial(j)).integrate(breaks_[i], breaks_[i + 1]));
      out[static_cast<std::size_t>(j)] = s.value();
    }
    return out;
  }

  /// Integral of p(t) rho(t) over the support.
  double integrate_against(const Polynomial1D& p) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < pieces_.size(); ++i)
      s.add((pieces_[i] * p).integrate(breaks_[i], breaks_[i + 1]));
    return s.value();
  }

  PiecewiseDensity1D scaled(double factor) const {
    std::vector<Polynomial1D> p = pieces_;
    for (auto& q : p) q *= factor;
    return PiecewiseDensity1D(breaks_, std::move(p));
  }

  /// Density of X + c.
  PiecewiseDensity1D translated(double c) const {
    std::vector<double> b = breaks_;
    for (double& v : b) v += c;
    std::vector<Polynomial1D> p;
    for (const auto& q : pieces_) p.push_back(q.shifted(-c));
    return PiecewiseDensity1D(std::move(b), std::move(p));
  }

  PiecewiseDensity1D normalized() const {
    if (!(mass_ > 0.0)) throw std::invalid_argument("normalized: non-positive mass");
    return scaled(1.0 / mass_);
  }

  /// True when every piece is nonnegative on its interval.
  bool is_nonnegative() const {
    for (std::size_t i = 0; i < pieces_.size(); ++i)
      if (range_on(pieces_[i], breaks_[i], breaks_[i + 1]).first < 0.0) return false;
    return true;
  }

  /// The piece polynomial covering [u, v] (assumed inside one piece or outside the support).
  Polynomial1D piece_at(double u, double v) const {
    auto i = piece_index(0.5 * (u + v));
    return i ? pieces_[*i] : Polynomial1D{};
  }

 private:
  std::vector<double> breaks_;
  std::vector<Polynomial1D> pieces_;
  std::vector<double> cumulative_;
  double mass_ = 0.0;
};

/// Measure on a uniform grid: weight w_j on cell [left + j h, left + (j+1) h).
struct GridMeasure1D {
  double left = 0.0;
  double h = 1.0;
  std::vector<double> weights;

  GridMeasure1D() = default;
  GridMeasure1D(double left_, double h_, std::vector<double> w) : left(left_), h(h_), weights(std::move(w)) {
    if (!(h > 0.0)) throw std::invalid_argument("GridMeasure1D: cell width must be positive");
  }

  std::size_t size() const { return weights.size(); }
  double right() const { return left + h * static_cast<double>(weights.size()); }
  double total() const {
    CompensatedSum s;
    for (double w : weights) s.add(w);
    return s.value();
  }

  /// Splits every cell into `factor` equal cells with equal shares of its weight.
  GridMeasure1D refined(std::size_t factor) const {
    if (factor < 1) throw std::invalid_argument("GridMeasure1D::refined: factor must be >= 1");
    std::vector<double> w;
    w.reserve(weights.size() * factor);
    for (double v : weights)
      for (std::size_t k = 0; k < factor; ++k) w.push_back(v / static_cast<double>(factor));
    return {left, h / static_cast<double>(factor), std::move(w)};
  }

  /// Piecewise-constant density with value w_j / h on each cell.
  PiecewiseDensity1D to_density() const {
    std::vector<double> b(weights.size() + 1);
    for (std::size_t j = 0; j <= weights.size(); ++j) b[j] = left + h * static_cast<double>(j);
    std::vector<double> v(weights.size());
    for (std::size_t j = 0; j < weights.size(); ++j) v[j] = weights[j] / h;
    return PiecewiseDensity1D::step(std::move(b), v);
  }
};

/// Exact cell masses of `rho` on a grid of width h starting at its left support end.
inline GridMeasure1D discretize(const PiecewiseDensity1D& rho, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("discretize: cell width must be positive");
  const Interval s = rho.support();
  const auto cells = static_cast<std::size_t>(std::ceil((s.hi - s.lo) / h - 1e-9));
  std::vector<double> w(std::max<std::size_t>(cells, 1));
  double prev = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double edge = s.lo + h * static_cast<double>(j + 1);
    const double c = rho.cdf(edge);
    w[j] = c - prev;
    prev = c;
  }
  return {s.lo, h, std::move(w)};
}

/// ||D_1 rho||_TV: jump magnitudes (boundary ends included) plus interior variation.
inline double bv_seminorm(const PiecewiseDensity1D& rho) {
  const auto& b = rho.breakpoints();
  const auto& p = rho.pieces();
  CompensatedSum s;
  double left_value = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    s.add(std::abs(p[i](b[i]) - left_value));
    const auto pts = monotone_breakpoints(p[i], b[i], b[i + 1]);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) s.add(std::abs(p[i](pts[k + 1]) - p[i](pts[k])));
    left_value = p[i](b[i + 1]);
  }
  s.add(std::abs(left_value));
  return s.value();
}

namespace detail {

/// Sorted union of two sorted breakpoint lists, dropping exact duplicates.
inline std::vector<double> merge_breaks(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// int |rho(x + h) - rho(x)| dx, exact. Symmetric in h by construction.
inline double shift_l1(const PiecewiseDensity1D& rho, double h) {
  h = std::abs(h);
  if (h == 0.0) return 0.0;
  const auto& b = rho.breakpoints();
  std::vector<double> shifted(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) shifted[i] = b[i] - h;
  const auto cuts = detail::merge_breaks(b, shifted);
  CompensatedSum s;
  if (rho.is_piecewise_constant()) {
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double u = cuts[k], v = cuts[k + 1], m = 0.5 * (u + v);
      s.add(std::abs(rho(m + h) - rho(m)) * (v - u));
    }
    return s.value();
  }
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double u = cuts[k], v = cuts[k + 1], m = 0.5 * (u + v);
    const auto ia = rho.piece_index(m + h);
    const auto ib = rho.piece_index(m);
    Polynomial1D q;
    if (ia) q += rho.pieces()[*ia].shifted(h);
    if (ib) q -= rho.pieces()[*ib];
    s.add(abs_integral(q, u, v));
  }
  return s.value();
}

namespace detail {

/// Positive breakpoint differences not exceeding `limit`, sorted.
inline std::vector<double> breakpoint_differences(const PiecewiseDensity1D& rho, double limit) {
  const auto& b = rho.breakpoints();
  std::vector<double> out;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double d = b[i] - b[j];
      if (d > 0.0 && d <= limit) out.push_back(d);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline double golden_max(const PiecewiseDensity1D& rho, double lo, double hi, double best) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
  double f1 = shift_l1(rho, x1), f2 = shift_l1(rho, x2);
  for (int it = 0; it < 200 && (b - a) > 1e-6 * std::max(b, 1e-300); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = shift_l1(rho, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = shift_l1(rho, x1);
    }
  }
  return std::max({best, f1, f2});
}

}  // namespace detail

/// Integral modulus of continuity sup_{|h| <= eps} int |rho(x+h) - rho(x)| dx.
/// Exact for step densities (shift_l1 is then piecewise linear in h with kinks
/// at breakpoint differences); otherwise a 1024-point h-grid with golden-section
/// refinement around the best grid cells.
inline double omega(const PiecewiseDensity1D& rho, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("omega: eps must be positive");
  double best = shift_l1(rho, eps);
  if (rho.is_piecewise_constant()) {
    for (double d : detail::breakpoint_differences(rho, eps)) best = std::max(best, shift_l1(rho, d));
    return best;
  }
  constexpr int kGrid = 1024;
  std::vector<double> hs;
  for (int i = 1; i <= kGrid; ++i) hs.push_back(eps * i / kGrid);
  for (double d : detail::breakpoint_differences(rho, eps)) hs.push_back(d);
  std::sort(hs.begin(), hs.end());
  std::vector<double> vals(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) vals[i] = shift_l1(rho, hs[i]);
  best = std::max(best, *std::max_element(vals.begin(), vals.end()));
  // refine around the three best local maxima
  std::vector<std::size_t> order(hs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + std::min<std::size_t>(3, order.size()), order.end(),
                    [&](std::size_t x, std::size_t y) { return vals[x] > vals[y]; });
  for (std::size_t r = 0; r < std::min<std::size_t>(3, order.size()); ++r) {
    const std::size_t i = order[r];
    const double lo = i == 0 ? 0.0 : hs[i - 1];
    const double hi = i + 1 < hs.size() ? hs[i + 1] : eps;
    if (hi > lo) best = detail::golden_max(rho, lo, hi, best);
  }
  return best;
}

/// omega(rho, eps) for every eps in `eps_values`, sharing shift evaluations
/// across the list. Exact; step densities only.
inline std::vector<double> omega_curve(const PiecewiseDensity1D& rho, const std::vector<double>& eps_values) {
  if (!rho.is_piecewise_constant()) {
    std::vector<double> out;
    for (double e : eps_values) out.push_back(omega(rho, e));
    return out;
  }
  double emax = 0.0;
  for (double e : eps_values) {
    if (!(e > 0.0)) throw std::invalid_argument("omega_curve: eps must be positive");
    emax = std::max(emax, e);
  }
  const auto diffs = detail::breakpoint_differences(rho, emax);
  std::vector<double> prefix(diffs.size());
  double run = 0.0;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    run = std::max(run, shift_l1(rho, diffs[i]));
    prefix[i] = run;
  }
  std::vector<double> out;
  for (double e : eps_values) {
    double v = shift_l1(rho, e);
    auto it = std::upper_bound(diffs.begin(), diffs.end(), e);
    if (it != diffs.begin()) v = std::max(v, prefix[static_cast<std::size_t>(it - diffs.begin()) - 1]);
    out.push_back(v);
  }
  return out;
}

struct BesovResult {
  double value = 0.0;
  double argmax_eps = 0.0;
  bool diverging = false;
};

/// sup over the grid of eps^{-alpha} omega(rho, eps). The grid is then extended
/// one decade further toward zero three times (same points per decade); the
/// seminorm is flagged diverging when every extension moves the maximum to its
/// new smallest point and raises it by more than 1%.
inline BesovResult besov_seminorm(const PiecewiseDensity1D& rho, double alpha, const std::vector<double>& eps_grid) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("besov_seminorm: alpha must lie in (0, 1]");
  if (eps_grid.size() < 16) throw std::invalid_argument("besov_seminorm: need at least 16 grid points");
  std::vector<double> grid = eps_grid;
  std::sort(grid.begin(), grid.end());
  if (!(grid.front() > 0.0)) throw std::invalid_argument("besov_seminorm: eps grid must be positive");

  auto evaluate = [&](const std::vector<double>& g) {
    const auto om = omega_curve(rho, g);
    BesovResult r;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double v = om[i] / std::pow(g[i], alpha);
      if (v > r.value) {
        r.value = v;
        r.argmax_eps = g[i];
      }
    }
    return r;
  };

  BesovResult base = evaluate(grid);
  const double decades = std::log10(grid.back() / grid.front());
  const double per_decade = decades > 0 ? static_cast<double>(grid.size() - 1) / decades : 16.0;
  const auto added = static_cast<std::size_t>(std::max(1.0, std::round(per_decade)));

  bool diverging = true;
  BesovResult prev = base;
  std::vector<double> g = grid;
  for (int refinement = 0; refinement < 3; ++refinement) {
    const double lo = g.front();
    std::vector<double> extra = log_space(lo / 10.0, lo, added + 1);
    extra.pop_back();
    g.insert(g.begin(), extra.begin(), extra.end());
    BesovResult cur = evaluate(g);
    if (cur.argmax_eps != g.front() || !(cur.value > 1.01 * prev.value)) diverging = false;
    prev = cur;
  }
  base.diverging = diverging;
  return base;
}

struct MixtureComponent {
  double a = 0.0;
  double b = 0.0;
  double weight = 0.0;
};

struct MixtureDecomposition {
  std::vector<MixtureComponent> components;

  /// Step density sum_i weight_i / (b_i - a_i) 1_[a_i, b_i].
  PiecewiseDensity1D reconstruct() const {
    std::vector<double> b;
    for (const auto& c : components) {
      b.push_back(c.a);
      b.push_back(c.b);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    std::vector<double> v(b.size() - 1, 0.0);
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      const double m = 0.5 * (b[i] + b[i + 1]);
      CompensatedSum s;
      for (const auto& c : components)
        if (m >= c.a && m < c.b) s.add(c.weight / (c.b - c.a));
      v[i] = s.value();
    }
    return PiecewiseDensity1D::step(std::move(b), v);
  }

  /// sum weight * ||D_1 rho_[a,b]||_TV = sum weight * 2 / (b - a).
  double total_variation() const {
    CompensatedSum s;
    for (const auto& c : components) s.add(c.weight * 2.0 / (c.b - c.a));
    return s.value();
  }
};

/// Layer-cake decomposition of a nonnegative normalized step density into
/// uniform components over the connected pieces of its superlevel sets.
inline MixtureDecomposition mixture_decompose(const PiecewiseDensity1D& rho) {
  if (!rho.is_piecewise_constant()) throw std::invalid_argument("mixture_decompose: density must be piecewise constant");
  std::vector<double> values;
  for (const auto& p : rho.pieces()) {
    const double v = p.coefficient(0);
    if (v < 0.0) throw std::invalid_argument("mixture_decompose: negative density piece");
    values.push_back(v);
  }
  if (std::abs(rho.mass() - 1.0) > 1e-9) throw std::invalid_argument("mixture_decompose: density is not normalized");

  std::vector<double> levels = values;
  levels.push_back(0.0);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  const auto& b = rho.breakpoints();
  MixtureDecomposition out;
  for (std::size_t l = 1; l < levels.size(); ++l) {
    const double band = levels[l] - levels[l - 1];
    std::size_t i = 0;
    while (i < values.size()) {
      if (values[i] < levels[l]) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < values.size() && values[j] >= levels[l]) ++j;
      out.components.push_back({b[i], b[j], band * (b[j] - b[i])});
      i = j;
    }
  }
  return out;
}

struct Distances {
  double tv = 0.0;
  double kantorovich = 0.0;
};

/// int |rho1 - rho2| over the union of supports.
inline double l1_distance(const PiecewiseDensity1D& r1, const PiecewiseDensity1D& r2) {
  const auto cuts = detail::merge_breaks(r1.breakpoints(), r2.breakpoints());
  CompensatedSum s;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double u = cuts[k], v = cuts[k + 1];
    s.add(abs_integral(r1.piece_at(u, v) - r2.piece_at(u, v), u, v));
  }
  return s.value();
}

namespace detail {

/// CDF of `rho` on [u, v] as a polynomial in x.
inline Polynomial1D cdf_piece(const PiecewiseDensity1D& rho, double u, double v) {
  const double m = 0.5 * (u + v);
  if (m < rho.support().lo) return {};
  if (m >= rho.support().hi) return Polynomial1D::constant(rho.mass());
  const auto i = *rho.piece_index(m);
  const Polynomial1D big = rho.pieces()[i].antiderivative();
  const double base = rho.cdf(rho.breakpoints()[i]) - big(rho.breakpoints()[i]);
  return big + Polynomial1D::constant(base);
}

}  // namespace detail

/// Total variation (L1) and Kantorovich (L1 of CDFs) distances of probability densities.
inline Distances distances(const PiecewiseDensity1D& r1, const PiecewiseDensity1D& r2) {
  if (std::abs(r1.mass() - 1.0) > 1e-9 || std::abs(r2.mass() - 1.0) > 1e-9)
    throw std::invalid_argument("distances: densities must have unit mass");
  Distances d;
  d.tv = l1_distance(r1, r2);
  const auto cuts = detail::merge_breaks(r1.breakpoints(), r2.breakpoints());
  CompensatedSum s;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double u = cuts[k], v = cuts[k + 1];
    s.add(abs_integral(detail::cdf_piece(r1, u, v) - detail::cdf_piece(r2, u, v), u, v));
  }
  d.kantorovich = s.value();
  return d;
}

}  // namespace corput

#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "corput/density1d.hpp"

namespace corput {

namespace detail {

/// Concave piecewise-linear function on [x0, x0 + total length], stored as a
/// start value and segments of strictly decreasing slope.
class ConcavePiecewiseLinear {
 public:
  struct Segment {
    double length;
    double slope;
  };

  ConcavePiecewiseLinear(double x0, double width) : x0_(x0) { segs_.push_back({width, 0.0}); total_ = width; }

  /// Sup-convolution with u -> w u on [-h, h]: the hypograph gains a segment
  /// of slope w and length 2h; the domain grows by h on each side.
  void sup_convolve(double w, double h) {
    x0_ -= h;
    v0_ -= w * h;
    auto it = std::find_if(segs_.begin(), segs_.end(), [w](const Segment& s) { return s.slope <= w; });
    if (it != segs_.end() && it->slope == w)
      it->length += 2.0 * h;
    else
      segs_.insert(it, Segment{2.0 * h, w});
    total_ += 2.0 * h;
  }

  /// Restricts the domain to [lo, lo + width].
  void clip(double lo, double width) {
    double cut = lo - x0_;
    while (cut > 0.0 && !segs_.empty()) {
      Segment& s = segs_.front();
      if (s.length <= cut) {
        v0_ += s.length * s.slope;
        cut -= s.length;
        total_ -= s.length;
        segs_.pop_front();
      } else {
        v0_ += cut * s.slope;
        s.length -= cut;
        total_ -= cut;
        cut = 0.0;
      }
    }
    x0_ = lo;
    double excess = total_ - width;
    while (excess > 0.0 && !segs_.empty()) {
      Segment& s = segs_.back();
      if (s.length <= excess) {
        excess -= s.length;
        total_ -= s.length;
        segs_.pop_back();
      } else {
        s.length -= excess;
        total_ -= excess;
        excess = 0.0;
      }
    }
  }

  double maximum() const {
    double v = v0_, best = v0_;
    for (const Segment& s : segs_) {
      if (s.slope <= 0.0) break;
      v += s.length * s.slope;
      best = v;
    }
    return best;
  }

 private:
  double x0_;
  double v0_ = 0.0;
  double total_ = 0.0;
  std::deque<Segment> segs_;
};

}  // namespace detail

/// Exact optimum of the grid LP
///   max sum_j s_j nu_j  over slopes s_j in [-1, 1],
///   node values phi_j = phi_0 + h sum_{i<=j} s_i in [-eps, eps], phi_0 free in [-eps, eps],
/// i.e. sup of int phi' dnu over test functions piecewise linear on the grid
/// with |phi| <= eps and |phi'| <= 1. Solved by dynamic programming over the
/// node value: the value function is concave piecewise linear and each cell
/// is a sup-convolution followed by a clip to [-eps, eps].
inline double sigma(const GridMeasure1D& nu, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("sigma: eps must be positive");
  if (nu.h > eps / 10.0 * (1.0 + 1e-12)) throw std::invalid_argument("sigma: grid too coarse (need h <= eps/10)");
  detail::ConcavePiecewiseLinear value(-eps, 2.0 * eps);
  for (double w : nu.weights) {
    value.sup_convolve(w / nu.h, nu.h);
    value.clip(-eps, 2.0 * eps);
  }
  return value.maximum();
}

struct SigmaOptions {
  /// Initial cell width is eps / initial_ratio.
  double initial_ratio = 64.0;
  double rel_tol = 1e-4;
  int max_doublings = 4;
};

/// sigma of a grid measure read as a step density: cells are split until the
/// width is at most eps / initial_ratio, then halved until the value changes
/// by less than rel_tol.
inline double sigma_refined(const GridMeasure1D& nu, double eps, const SigmaOptions& opt = {}) {
  if (!(eps > 0.0)) throw std::invalid_argument("sigma: eps must be positive");
  const double target = eps / opt.initial_ratio;
  const auto factor = static_cast<std::size_t>(std::max(1.0, std::ceil(nu.h / target - 1e-9)));
  GridMeasure1D g = factor > 1 ? nu.refined(factor) : nu;
  double v = sigma(g, eps);
  for (int k = 0; k < opt.max_doublings; ++k) {
    g = g.refined(2);
    const double next = sigma(g, eps);
    const bool converged = std::abs(next - v) <= opt.rel_tol * std::max(std::abs(next), 1e-300);
    v = next;
    if (converged) break;
  }
  return v;
}

/// sigma of a density, discretized by exact cell masses with h = eps / 64 and
/// refined by doubling until the relative change drops below rel_tol.
inline double sigma(const PiecewiseDensity1D& rho, double eps, const SigmaOptions& opt = {}) {
  if (!(eps > 0.0)) throw std::invalid_argument("sigma: eps must be positive");
  double h = eps / opt.initial_ratio;
  double v = sigma(discretize(rho, h), eps);
  for (int k = 0; k < opt.max_doublings; ++k) {
    h *= 0.5;
    const double next = sigma(discretize(rho, h), eps);
    const bool converged = std::abs(next - v) <= opt.rel_tol * std::max(std::abs(next), 1e-300);
    v = next;
    if (converged) break;
  }
  return v;
}

}  // namespace corput

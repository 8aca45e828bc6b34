#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "corput/numeric.hpp"

namespace corput {

/// Dense univariate polynomial, coefficients in ascending power order.
/// Trailing zero coefficients are trimmed; the zero polynomial is empty.
class Polynomial1D {
 public:
  Polynomial1D() = default;
  explicit Polynomial1D(std::vector<double> coefficients) : c_(std::move(coefficients)) { trim(); }
  Polynomial1D(std::initializer_list<double> coefficients) : c_(coefficients) { trim(); }

  static Polynomial1D constant(double v) { return Polynomial1D({v}); }
  static Polynomial1D monomial(int power, double coef = 1.0) {
    std::vector<double> c(static_cast<std::size_t>(power) + 1, 0.0);
    c.back() = coef;
    return Polynomial1D(std::move(c));
  }

  const std::vector<double>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree; 0 for the zero polynomial.
  int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
  double coefficient(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : 0.0;
  }
  double leading() const { return c_.empty() ? 0.0 : c_.back(); }
  double max_abs_coefficient() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  double operator()(double t) const {
    double v = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
    return v;
  }

  Polynomial1D derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
    return Polynomial1D(std::move(d));
  }

  /// Antiderivative vanishing at 0.
  Polynomial1D antiderivative() const {
    if (c_.empty()) return {};
    std::vector<double> a(c_.size() + 1, 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / static_cast<double>(k + 1);
    return Polynomial1D(std::move(a));
  }

  double integrate(double a, double b) const {
    const Polynomial1D big = antiderivative();
    return big(b) - big(a);
  }

  /// t -> p(offset + scale * t).
  Polynomial1D compose_affine(double offset, double scale) const {
    // Horner in polynomial arithmetic
    std::vector<double> acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      std::vector<double> next(acc.size() + 1, 0.0);
      for (std::size_t k = 0; k < acc.size(); ++k) {
        next[k] += acc[k] * offset;
        next[k + 1] += acc[k] * scale;
      }
      next[0] += *it;
      acc = std::move(next);
    }
    return Polynomial1D(std::move(acc));
  }

  Polynomial1D shifted(double h) const { return compose_affine(h, 1.0); }

  Polynomial1D& operator+=(const Polynomial1D& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Polynomial1D& operator-=(const Polynomial1D& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Polynomial1D& operator*=(double s) {
    for (double& v : c_) v *= s;
    trim();
    return *this;
  }
  friend Polynomial1D operator+(Polynomial1D a, const Polynomial1D& b) { return a += b; }
  friend Polynomial1D operator-(Polynomial1D a, const Polynomial1D& b) { return a -= b; }
  friend Polynomial1D operator*(Polynomial1D a, double s) { return a *= s; }
  friend Polynomial1D operator*(double s, Polynomial1D a) { return a *= s; }
  friend Polynomial1D operator*(const Polynomial1D& a, const Polynomial1D& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<double> out(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial1D(std::move(out));
  }
  friend bool operator==(const Polynomial1D&, const Polynomial1D&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
  }
  std::vector<double> c_;
};

struct Root {
  double location = 0.0;
  int multiplicity = 1;
};

namespace detail {

/// Drops trailing coefficients whose magnitude is below `tol`.
inline Polynomial1D drop_small_leading(const Polynomial1D& p, double tol) {
  std::vector<double> c = p.coefficients();
  while (!c.empty() && std::abs(c.back()) <= tol) c.pop_back();
  return Polynomial1D(std::move(c));
}

inline Polynomial1D make_monic(const Polynomial1D& p) {
  if (p.is_zero()) return p;
  return p * (1.0 / p.leading());
}

/// Quotient and remainder of polynomial long division.
inline std::pair<Polynomial1D, Polynomial1D> divide(const Polynomial1D& num, const Polynomial1D& den) {
  if (den.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<double> r = num.coefficients();
  const auto& d = den.coefficients();
  if (r.size() < d.size()) return {Polynomial1D{}, num};
  std::vector<double> q(r.size() - d.size() + 1, 0.0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const double coef = r[k + d.size() - 1] / d.back();
    q[k] = coef;
    for (std::size_t j = 0; j < d.size(); ++j) r[k + j] -= coef * d[j];
    r[k + d.size() - 1] = 0.0;
  }
  return {Polynomial1D(std::move(q)), Polynomial1D(std::move(r))};
}

/// Monic GCD by the Euclidean algorithm; remainder coefficients below
/// 1e-12 times the dividend's largest coefficient are treated as zero.
inline Polynomial1D approximate_gcd(Polynomial1D a, Polynomial1D b) {
  constexpr double kDrop = 1e-12;
  a = make_monic(a);
  b = make_monic(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    const double scale = std::max(a.max_abs_coefficient(), b.max_abs_coefficient());
    Polynomial1D r = drop_small_leading(divide(a, b).second, kDrop * scale);
    a = std::move(b);
    b = make_monic(r);
  }
  return make_monic(a);
}

/// Square-free decomposition (Yun): pairs (factor, multiplicity).
inline std::vector<std::pair<Polynomial1D, int>> square_free_factors(const Polynomial1D& p) {
  std::vector<std::pair<Polynomial1D, int>> out;
  if (p.degree() < 1) return out;
  const Polynomial1D pm = make_monic(p);
  const Polynomial1D dp = pm.derivative();
  Polynomial1D g = approximate_gcd(pm, dp);
  Polynomial1D c = divide(pm, g).first;
  Polynomial1D d = divide(dp, g).first - c.derivative();
  int mult = 1;
  while (c.degree() >= 1 && mult <= p.degree()) {
    const double tol = 1e-12 * std::max(1.0, d.max_abs_coefficient());
    d = drop_small_leading(d, tol);
    Polynomial1D a = d.is_zero() ? make_monic(c) : approximate_gcd(c, d);
    if (a.degree() >= 1) out.emplace_back(a, mult);
    c = divide(c, a).first;
    if (d.is_zero()) break;
    d = divide(d, a).first - c.derivative();
    ++mult;
  }
  return out;
}

inline double bisect_sign_change(const Polynomial1D& p, double lo, double hi, double width) {
  double flo = p(lo);
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> distinct_roots(const Polynomial1D& p, double a, double b);

/// Roots of a square-free polynomial in [a, b], bracketed by its critical points:
/// between consecutive critical points the polynomial is monotone, so each
/// bracket holds at most one root.
inline std::vector<double> square_free_roots(const Polynomial1D& q, double a, double b) {
  std::vector<double> roots;
  const double width = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  if (q.degree() < 1) return roots;
  if (q.degree() == 1) {
    const double r = -q.coefficient(0) / q.coefficient(1);
    if (r >= a && r <= b) roots.push_back(r);
    return roots;
  }
  std::vector<double> pts{a};
  for (double c : distinct_roots(q.derivative(), a, b))
    if (c > a && c < b) pts.push_back(c);
  pts.push_back(b);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double u = pts[i], v = pts[i + 1];
    const double fu = q(u), fv = q(v);
    if (fu == 0.0) {
      if (roots.empty() || roots.back() != u) roots.push_back(u);
      continue;
    }
    if (fv == 0.0) {
      roots.push_back(v);
      continue;
    }
    if ((fu < 0) != (fv < 0)) roots.push_back(bisect_sign_change(q, u, v, width));
  }
  return roots;
}

inline std::vector<double> distinct_roots(const Polynomial1D& p, double a, double b) {
  std::vector<double> out;
  for (const auto& [factor, mult] : square_free_factors(p))
    for (double r : square_free_roots(factor, a, b)) out.push_back(r);
  std::sort(out.begin(), out.end());
  const double tol = 1e-11 * std::max({1.0, std::abs(a), std::abs(b)});
  std::vector<double> merged;
  for (double r : out)
    if (merged.empty() || r - merged.back() > tol) merged.push_back(r);
  return merged;
}

}  // namespace detail

/// All real roots of `p` in [a, b] with multiplicities, sorted ascending.
/// Each root is localized to width 1e-12 * max(1, |a|, |b|).
inline std::vector<Root> real_roots(const Polynomial1D& p, double a, double b) {
  if (p.is_zero()) throw std::invalid_argument("real_roots: identically zero polynomial");
  if (!(a <= b)) throw std::invalid_argument("real_roots: empty interval");
  std::vector<Root> out;
  for (const auto& [factor, mult] : detail::square_free_factors(p))
    for (double r : detail::square_free_roots(factor, a, b)) out.push_back({r, mult});
  std::sort(out.begin(), out.end(), [](const Root& x, const Root& y) { return x.location < y.location; });
  const double tol = 1e-11 * std::max({1.0, std::abs(a), std::abs(b)});
  std::vector<Root> merged;
  for (const Root& r : out) {
    if (!merged.empty() && r.location - merged.back().location <= tol)
      merged.back().multiplicity += r.multiplicity;
    else
      merged.push_back(r);
  }
  return merged;
}

/// Number of distinct real roots in (a, b] from the Sturm sequence.
inline int sturm_count(const Polynomial1D& p, double a, double b) {
  if (p.degree() < 1) return 0;
  std::vector<Polynomial1D> seq{p, p.derivative()};
  while (seq.back().degree() >= 1) {
    const double scale = std::max(seq[seq.size() - 2].max_abs_coefficient(), 1e-300);
    Polynomial1D r = detail::drop_small_leading(detail::divide(seq[seq.size() - 2], seq.back()).second,
                                                1e-12 * scale);
    if (r.is_zero()) break;
    seq.push_back(r * -1.0);
  }
  auto variations = [&](double x) {
    int count = 0;
    double prev = 0.0;
    for (const auto& q : seq) {
      const double v = q(x);
      if (v == 0.0) continue;
      if (prev != 0.0 && (v < 0) != (prev < 0)) ++count;
      prev = v;
    }
    return count;
  };
  return variations(a) - variations(b);
}

/// Splits [a, b] at the interior critical points of `g`, so that `g` is
/// monotone on every returned sub-interval.
inline std::vector<double> monotone_breakpoints(const Polynomial1D& g, double a, double b) {
  std::vector<double> pts{a};
  if (g.degree() >= 2)
    for (double c : detail::distinct_roots(g.derivative(), a, b))
      if (c > pts.back() && c < b) pts.push_back(c);
  pts.push_back(b);
  return pts;
}

/// Solves g(x) = level on [u, v] where g is monotone and the level is bracketed.
inline double solve_monotone(const Polynomial1D& g, double u, double v, double level) {
  double gu = g(u) - level;
  if (gu == 0.0) return u;
  double lo = u, hi = v;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid) - level;
    if (gm == 0.0) return mid;
    if ((gm < 0) == (gu < 0)) {
      lo = mid;
      gu = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// {x in [a, b] : lo <= g(x) <= hi} as a sorted union of closed intervals.
/// Either bound may be infinite.
inline std::vector<Interval> level_band(const Polynomial1D& g, double a, double b, double lo, double hi) {
  std::vector<Interval> out;
  if (!(a < b) || lo > hi) return out;
  auto push = [&](double x0, double x1) {
    if (!(x1 >= x0)) return;
    if (!out.empty() && x0 <= out.back().hi)
      out.back().hi = std::max(out.back().hi, x1);
    else
      out.push_back({x0, x1});
  };
  if (g.degree() < 1) {
    const double v = g(0.0);
    if (v >= lo && v <= hi) out.push_back({a, b});
    return out;
  }
  const auto pts = monotone_breakpoints(g, a, b);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double u = pts[i], v = pts[i + 1];
    double gu = g(u), gv = g(v);
    const bool increasing = gv >= gu;
    if (!increasing) {
      // mirror so that the piece is increasing from u to v
      const double gmin = gv, gmax = gu;
      if (gmax < lo || gmin > hi) continue;
      const double x_hi = gmax <= hi ? u : solve_monotone(g, u, v, hi);
      const double x_lo = gmin >= lo ? v : solve_monotone(g, u, v, lo);
      push(x_hi, x_lo);
    } else {
      if (gv < lo || gu > hi) continue;
      const double x0 = gu >= lo ? u : solve_monotone(g, u, v, lo);
      const double x1 = gv <= hi ? v : solve_monotone(g, u, v, hi);
      push(x0, x1);
    }
  }
  return out;
}

/// Exact integral of |p| over [a, b], splitting at the sign changes of p.
inline double abs_integral(const Polynomial1D& p, double a, double b) {
  if (p.is_zero() || !(b > a)) return 0.0;
  if (p.degree() == 0) return std::abs(p.leading()) * (b - a);
  const Polynomial1D big = p.antiderivative();
  std::vector<double> pts{a};
  for (const Root& r : real_roots(p, a, b))
    if (r.location > pts.back() && r.location < b) pts.push_back(r.location);
  pts.push_back(b);
  CompensatedSum s;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) s.add(std::abs(big(pts[i + 1]) - big(pts[i])));
  return s.value();
}

/// min and max of p over [a, b].
inline std::pair<double, double> range_on(const Polynomial1D& p, double a, double b) {
  double lo = std::min(p(a), p(b)), hi = std::max(p(a), p(b));
  if (p.degree() >= 2)
    for (double c : detail::distinct_roots(p.derivative(), a, b)) {
      const double v = p(c);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  return {lo, hi};
}

}  // namespace corput

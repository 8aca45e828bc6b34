#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "corput/density1d.hpp"
#include "corput/polynomial.hpp"
#include "corput/rng.hpp"

namespace corput {

/// Normalized step density with 1..max_pieces pieces on a subset of [0, 1];
/// about 15% of the pieces are zero.
inline PiecewiseDensity1D random_step_density(CounterRng& rng, int max_pieces = 8) {
  const int m = 1 + static_cast<int>(rng.uniform() * max_pieces);
  std::vector<double> b(static_cast<std::size_t>(m) + 1);
  for (auto& x : b) x = rng.uniform();
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  if (b.size() < 2 || b.back() - b.front() < 0.05) return PiecewiseDensity1D::uniform(0.0, 1.0);
  for (std::size_t i = 1; i < b.size(); ++i) b[i] = std::max(b[i], b[i - 1] + 1e-3);
  std::vector<double> v(b.size() - 1);
  for (auto& x : v) x = rng.uniform() < 0.15 ? 0.0 : rng.uniform();
  if (*std::max_element(v.begin(), v.end()) == 0.0) v[0] = 1.0;
  return PiecewiseDensity1D::step(std::move(b), v).normalized();
}

/// A bounded-variation factor for product measures: uniform, tent or a
/// random step density, centered near 0.
inline PiecewiseDensity1D random_bv_factor(CounterRng& rng) {
  const double u = rng.uniform();
  if (u < 1.0 / 3) return PiecewiseDensity1D::uniform(-0.5, 0.5);
  if (u < 2.0 / 3) return PiecewiseDensity1D::tent(-1.0, 1.0);
  return random_step_density(rng, 4).translated(-0.5);
}

/// Sorted, disjoint union of the given intervals.
inline std::vector<Interval> merge_intervals(std::vector<Interval> a) {
  std::sort(a.begin(), a.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> out;
  for (const auto& iv : a) {
    if (!out.empty() && iv.lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, iv.hi);
    else
      out.push_back(iv);
  }
  return out;
}

inline double total_length(const std::vector<Interval>& a) {
  double s = 0.0;
  for (const auto& iv : merge_intervals(a)) s += iv.hi - iv.lo;
  return s;
}

/// 1..max_count intervals with lengths in [min_len, max_len] and left ends in `range`, merged.
inline std::vector<Interval> random_interval_union(CounterRng& rng, int max_count, Interval range, double min_len,
                                                   double max_len) {
  const int m = 1 + static_cast<int>(rng.uniform() * max_count);
  std::vector<Interval> a;
  for (int i = 0; i < m; ++i) {
    const double lo = rng.uniform(range.lo, range.hi);
    a.push_back({lo, lo + rng.uniform(min_len, max_len)});
  }
  return merge_intervals(std::move(a));
}

/// t^k / k! plus lower-order terms uniform on [-1, 1], so the k-th derivative is 1.
inline Polynomial1D unit_top_derivative(CounterRng& rng, int k) {
  std::vector<double> c(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j < k; ++j) c[static_cast<std::size_t>(j)] = rng.uniform(-1.0, 1.0);
  c[static_cast<std::size_t>(k)] = 1.0 / std::tgamma(k + 1.0);
  return Polynomial1D(c);
}

namespace detail {

inline void enumerate_exponents(int n, int d, int m, Exponent& e, int pos, int used, std::vector<Exponent>& out) {
  if (pos == n) {
    out.push_back(e);
    return;
  }
  for (int j = 0; j <= std::min(m, d - used); ++j) {
    e[static_cast<std::size_t>(pos)] = j;
    enumerate_exponents(n, d, m, e, pos + 1, used + j, out);
  }
  e[static_cast<std::size_t>(pos)] = 0;
}

}  // namespace detail

/// Exponents of total degree <= d and individual degree <= m in n variables.
inline std::vector<Exponent> monomials(int n, int d, int m) {
  std::vector<Exponent> out;
  Exponent e(static_cast<std::size_t>(n), 0);
  detail::enumerate_exponents(n, d, m, e, 0, 0, out);
  return out;
}

/// Dense random polynomial of degree d and individual degree <= m: every
/// coefficient i.i.d. uniform on [-1, 1]; the top-degree block is redrawn
/// until its largest coefficient is at least 1/4 in magnitude.
inline Polynomial random_polynomial(CounterRng& rng, int n, int d, int m) {
  if (d < 1 || m < 1 || n * m < d) throw std::invalid_argument("random_polynomial: need 1 <= d <= n m");
  const auto exps = monomials(n, d, m);
  Polynomial f(n);
  std::vector<Exponent> top;
  for (const auto& e : exps) {
    if (total_degree(e) == d)
      top.push_back(e);
    else
      f.add_term(e, rng.uniform(-1.0, 1.0));
  }
  std::vector<double> c(top.size());
  for (;;) {
    double mx = 0.0;
    for (auto& x : c) {
      x = rng.uniform(-1.0, 1.0);
      mx = std::max(mx, std::abs(x));
    }
    if (mx >= 0.25) break;
  }
  for (std::size_t i = 0; i < top.size(); ++i) f.add_term(top[i], c[i]);
  return f;
}

/// (<a, x> - b)^d with a uniform on the unit sphere and b uniform on [-0.2, 0.2].
inline Polynomial ridge_polynomial(CounterRng& rng, int n, int d) {
  std::vector<double> a(static_cast<std::size_t>(n));
  double norm = 0.0;
  while (!(norm > 1e-3)) {
    norm = 0.0;
    for (auto& x : a) {
      x = rng.normal();
      norm += x * x;
    }
    norm = std::sqrt(norm);
  }
  Polynomial line = Polynomial::constant(n, -rng.uniform(-0.2, 0.2));
  for (int j = 0; j < n; ++j) line += Polynomial::variable(n, j, a[static_cast<std::size_t>(j)] / norm);
  Polynomial f = line;
  for (int k = 1; k < d; ++k) f = f * line;
  return f;
}

/// x1 x2 ... xd in n >= d variables.
inline Polynomial monomial_product(int n, int d) {
  Polynomial f(n);
  Exponent e(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < d; ++j) e[static_cast<std::size_t>(j)] = 1;
  f.add_term(e, 1.0);
  return f;
}

}  // namespace corput

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "corput/numeric.hpp"
#include "corput/polynomial1d.hpp"

namespace corput {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Graded lexicographic order: total degree first, then lexicographic with x1 most significant.
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

/// Degree data of the top-degree homogeneous part.
struct LeadingData {
  int degree = 0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// Sparse multivariate polynomial in x1..xn with real coefficients.
/// Zero coefficients are never stored.
class Polynomial {
 public:
  using Terms = std::map<Exponent, double, GradedLexLess>;

  explicit Polynomial(int n = 1) : n_(n) {
    if (n < 1) throw std::invalid_argument("Polynomial: dimension must be >= 1");
  }

  static Polynomial constant(int n, double v) {
    Polynomial p(n);
    p.add_term(Exponent(static_cast<std::size_t>(n), 0), v);
    return p;
  }
  /// The coordinate function x_{k+1} (k is zero-based).
  static Polynomial variable(int n, int k, double coef = 1.0) {
    Polynomial p(n);
    Exponent e(static_cast<std::size_t>(n), 0);
    e.at(static_cast<std::size_t>(k)) = 1;
    p.add_term(e, coef);
    return p;
  }
  static Polynomial from_1d(const Polynomial1D& q) {
    Polynomial p(1);
    for (int k = 0; k <= q.degree(); ++k) p.add_term({k}, q.coefficient(k));
    return p;
  }

  int dimension() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds `coef * x^e`, collecting like terms.
  void add_term(const Exponent& e, double coef) {
    if (static_cast<int>(e.size()) != n_) throw std::invalid_argument("Polynomial: exponent length mismatch");
    for (int j : e)
      if (j < 0) throw std::invalid_argument("Polynomial: negative exponent");
    if (coef == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(e, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  double coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
  }

  /// Total degree d(f); 0 for the zero polynomial.
  int degree() const { return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first); }

  /// Individual degree m(f).
  int individual_degree() const {
    int m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, *std::max_element(e.begin(), e.end()));
    return m;
  }

  double operator()(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("Polynomial: point dimension mismatch");
    CompensatedSum s;
    for (const auto& [e, c] : terms_) {
      double m = c;
      for (std::size_t k = 0; k < e.size(); ++k)
        for (int j = 0; j < e[k]; ++j) m *= x[k];
      s.add(m);
    }
    return s.value();
  }
  double operator()(std::initializer_list<double> x) const {
    return (*this)(std::span<const double>(x.begin(), x.size()));
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_same_dim(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_same_dim(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same_dim(b);
    Polynomial out(a.n_);
    Exponent e(static_cast<std::size_t>(a.n_));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Top-degree homogeneous part.
  Polynomial leading_form() const {
    Polynomial out(n_);
    const int d = degree();
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == d) out.add_term(e, c);
    return out;
  }

 private:
  void check_same_dim(const Polynomial& o) const {
    if (o.n_ != n_) throw std::invalid_argument("Polynomial: dimension mismatch");
  }

  int n_;
  Terms terms_;
};

/// Partial derivative d^alpha f.
inline Polynomial derive(const Polynomial& f, const Exponent& alpha) {
  if (static_cast<int>(alpha.size()) != f.dimension())
    throw std::invalid_argument("derive: multi-index length mismatch");
  for (int a : alpha)
    if (a < 0) throw std::invalid_argument("derive: negative multi-index");
  Polynomial out(f.dimension());
  Exponent e(alpha.size());
  for (const auto& [ex, c] : f.terms()) {
    double coef = c;
    bool vanishes = false;
    for (std::size_t k = 0; k < ex.size() && !vanishes; ++k) {
      if (ex[k] < alpha[k]) {
        vanishes = true;
        break;
      }
      for (int j = 0; j < alpha[k]; ++j) coef *= static_cast<double>(ex[k] - j);
      e[k] = ex[k] - alpha[k];
    }
    if (!vanishes) out.add_term(e, coef);
  }
  return out;
}

inline void check_unit(std::span<const double> theta) {
  double s = 0.0;
  for (double v : theta) s += v * v;
  if (std::abs(std::sqrt(s) - 1.0) > 1e-12) throw std::invalid_argument("direction must be a unit vector");
}

/// d_theta f = sum_k theta_k df/dx_k.
inline Polynomial directional_derivative(const Polynomial& f, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != f.dimension())
    throw std::invalid_argument("directional_derivative: dimension mismatch");
  check_unit(theta);
  Polynomial out(f.dimension());
  for (int k = 0; k < f.dimension(); ++k) {
    if (theta[static_cast<std::size_t>(k)] == 0.0) continue;
    Exponent a(theta.size(), 0);
    a[static_cast<std::size_t>(k)] = 1;
    out += derive(f, a) * theta[static_cast<std::size_t>(k)];
  }
  return out;
}

/// Coefficients of t -> f(y + t theta).
inline Polynomial1D restrict_line(const Polynomial& f, std::span<const double> y, std::span<const double> theta) {
  const auto n = static_cast<std::size_t>(f.dimension());
  if (y.size() != n || theta.size() != n) throw std::invalid_argument("restrict_line: dimension mismatch");
  std::vector<Polynomial1D> lines;
  lines.reserve(n);
  for (std::size_t k = 0; k < n; ++k) lines.push_back(Polynomial1D({y[k], theta[k]}));
  Polynomial1D out;
  for (const auto& [e, c] : f.terms()) {
    Polynomial1D m = Polynomial1D::constant(c);
    for (std::size_t k = 0; k < n; ++k)
      for (int j = 0; j < e[k]; ++j) m = m * lines[k];
    out += m;
  }
  return out;
}

/// Univariate view of a polynomial in one variable.
inline Polynomial1D as_univariate(const Polynomial& f) {
  if (f.dimension() != 1) throw std::invalid_argument("as_univariate: polynomial is not univariate");
  std::vector<double> c(static_cast<std::size_t>(f.degree()) + 1, 0.0);
  for (const auto& [e, v] : f.terms()) c[static_cast<std::size_t>(e[0])] = v;
  return Polynomial1D(std::move(c));
}

inline LeadingData leading_data(const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("leading_data: zero polynomial");
  LeadingData out;
  out.degree = f.degree();
  double s = 0.0;
  for (const auto& [e, c] : f.terms())
    if (total_degree(e) == out.degree) {
      s += c * c;
      out.linf = std::max(out.linf, std::abs(c));
    }
  out.l2 = std::sqrt(s);
  return out;
}

/// Per-coordinate substitution x_k -> offset_k + scale_k * y_k.
inline Polynomial substitute_affine(const Polynomial& f, std::span<const double> offset, std::span<const double> scale) {
  const auto n = static_cast<std::size_t>(f.dimension());
  Polynomial out(f.dimension());
  // binomial expansion of (offset + scale y)^j per coordinate
  std::vector<std::vector<std::vector<double>>> expansions(n);
  const int maxdeg = f.individual_degree();
  for (std::size_t k = 0; k < n; ++k) {
    expansions[k].resize(static_cast<std::size_t>(maxdeg) + 1);
    expansions[k][0] = {1.0};
    for (int j = 1; j <= maxdeg; ++j) {
      const auto& prev = expansions[k][static_cast<std::size_t>(j - 1)];
      std::vector<double> next(prev.size() + 1, 0.0);
      for (std::size_t i = 0; i < prev.size(); ++i) {
        next[i] += prev[i] * offset[k];
        next[i + 1] += prev[i] * scale[k];
      }
      expansions[k][static_cast<std::size_t>(j)] = std::move(next);
    }
  }
  for (const auto& [e, c] : f.terms()) {
    // iterate over the tensor product of the per-coordinate expansions
    std::vector<int> idx(n, 0);
    Exponent ex(n, 0);
    while (true) {
      double coef = c;
      for (std::size_t k = 0; k < n; ++k) {
        coef *= expansions[k][static_cast<std::size_t>(e[k])][static_cast<std::size_t>(idx[k])];
        ex[k] = idx[k];
      }
      out.add_term(ex, coef);
      std::size_t k = 0;
      for (; k < n; ++k) {
        if (idx[k] < e[k]) {
          ++idx[k];
          break;
        }
        idx[k] = 0;
      }
      if (k == n) break;
    }
  }
  return out;
}

/// g(y) = f(Ly) with L_k(y) = (a_k + b_k)/2 + y_k (b_k - a_k): maps Q^n = [-1/2, 1/2]^n onto the box.
inline Polynomial box_rescale(const Polynomial& f, std::span<const Interval> box) {
  if (static_cast<int>(box.size()) != f.dimension()) throw std::invalid_argument("box_rescale: dimension mismatch");
  std::vector<double> offset(box.size()), scale(box.size());
  for (std::size_t k = 0; k < box.size(); ++k) {
    if (!(box[k].lo < box[k].hi)) throw std::invalid_argument("box_rescale: degenerate interval");
    offset[k] = 0.5 * (box[k].lo + box[k].hi);
    scale[k] = box[k].hi - box[k].lo;
  }
  return substitute_affine(f, offset, scale);
}

/// Integral of x^j over [-1/2, 1/2].
inline double cube_monomial_moment(int j) {
  if (j % 2 != 0) return 0.0;
  return std::ldexp(1.0, -j) / static_cast<double>(j + 1);
}

/// Exact integral of f over Q^n = [-1/2, 1/2]^n.
inline double cube_moment(const Polynomial& f) {
  CompensatedSum s;
  for (const auto& [e, c] : f.terms()) {
    double m = c;
    for (int j : e) m *= cube_monomial_moment(j);
    s.add(m);
  }
  return s.value();
}

inline double cube_variance(const Polynomial& f) {
  const double m = cube_moment(f);
  return std::max(0.0, cube_moment(f * f) - m * m);
}

/// Integral of f against a product measure whose k-th factor has monomial
/// moments moments[k][j] = int t^j rho_k(t) dt.
inline double product_moment(const Polynomial& f, const std::vector<std::vector<double>>& moments) {
  if (static_cast<int>(moments.size()) != f.dimension())
    throw std::invalid_argument("product_moment: dimension mismatch");
  CompensatedSum s;
  for (const auto& [e, c] : f.terms()) {
    double m = c;
    for (std::size_t k = 0; k < e.size(); ++k) {
      const auto j = static_cast<std::size_t>(e[k]);
      if (j >= moments[k].size()) throw std::invalid_argument("product_moment: missing moment");
      m *= moments[k][j];
    }
    s.add(m);
  }
  return s.value();
}

/// Flattened polynomial for fast repeated evaluation.
class PolynomialEvaluator {
 public:
  explicit PolynomialEvaluator(const Polynomial& f) : n_(static_cast<std::size_t>(f.dimension())) {
    max_power_ = f.individual_degree();
    for (const auto& [e, c] : f.terms()) {
      coef_.push_back(c);
      for (int j : e) exps_.push_back(j);
    }
  }

  std::size_t dimension() const { return n_; }

  /// `scratch` must hold at least n * (max_power + 1) doubles.
  double operator()(const double* x, std::vector<double>& scratch) const {
    const std::size_t stride = static_cast<std::size_t>(max_power_) + 1;
    scratch.resize(n_ * stride);
    for (std::size_t k = 0; k < n_; ++k) {
      double* row = scratch.data() + k * stride;
      row[0] = 1.0;
      for (std::size_t j = 1; j < stride; ++j) row[j] = row[j - 1] * x[k];
    }
    double s = 0.0;
    for (std::size_t t = 0; t < coef_.size(); ++t) {
      double m = coef_[t];
      const int* e = exps_.data() + t * n_;
      for (std::size_t k = 0; k < n_; ++k)
        if (e[k] != 0) m *= scratch[k * stride + static_cast<std::size_t>(e[k])];
      s += m;
    }
    return s;
  }

 private:
  std::size_t n_;
  int max_power_ = 0;
  std::vector<double> coef_;
  std::vector<int> exps_;
};

}  // namespace corput

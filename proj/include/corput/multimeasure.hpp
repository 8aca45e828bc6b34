#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "corput/density1d.hpp"
#include "corput/parallel.hpp"
#include "corput/rng.hpp"

namespace corput {

namespace detail {

/// Solves M x = r by Gaussian elimination with partial pivoting; returns
/// nullopt for (numerically) singular M. M is row-major n x n.
inline std::optional<std::vector<double>> solve_linear(std::vector<double> M, std::vector<double> r) {
  const std::size_t n = r.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(M[i * n + c]) > std::abs(M[piv * n + c])) piv = i;
    if (std::abs(M[piv * n + c]) < 1e-13) return std::nullopt;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(M[c * n + j], M[piv * n + j]);
      std::swap(r[c], r[piv]);
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      const double f = M[i * n + c] / M[c * n + c];
      if (f == 0.0) continue;
      for (std::size_t j = c; j < n; ++j) M[i * n + j] -= f * M[c * n + j];
      r[i] -= f * r[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = r[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= M[i * n + j] * x[j];
    x[i] = s / M[i * n + i];
  }
  return x;
}

inline double determinant(std::vector<double> M, std::size_t n) {
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(M[i * n + c]) > std::abs(M[piv * n + c])) piv = i;
    if (M[piv * n + c] == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(M[c * n + j], M[piv * n + j]);
      det = -det;
    }
    det *= M[c * n + c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const double f = M[i * n + c] / M[c * n + c];
      for (std::size_t j = c; j < n; ++j) M[i * n + j] -= f * M[c * n + j];
    }
  }
  return det;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace detail

struct Box {
  std::vector<Interval> sides;
};

/// Convex hull of n + 1 affinely independent vertices in R^n.
class Simplex {
 public:
  explicit Simplex(std::vector<std::vector<double>> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size() - 1;
    if (vertices_.size() < 2) throw std::invalid_argument("Simplex: need n + 1 vertices");
    for (const auto& v : vertices_)
      if (v.size() != n) throw std::invalid_argument("Simplex: need n + 1 vertices in R^n");
    edges_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) edges_[j * n + i] = vertices_[i + 1][j] - vertices_[0][j];
    volume_ = std::abs(detail::determinant(edges_, n)) / detail::factorial(static_cast<int>(n));
    if (!(volume_ > 0.0)) throw std::invalid_argument("Simplex: degenerate vertices");
  }

  /// The standard simplex {x >= 0, sum x <= 1}.
  static Simplex standard(int n) {
    std::vector<std::vector<double>> v(static_cast<std::size_t>(n) + 1, std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(k)] = 1.0;
    return Simplex(std::move(v));
  }

  const std::vector<std::vector<double>>& vertices() const { return vertices_; }
  std::size_t dimension() const { return vertices_.size() - 1; }
  double volume() const { return volume_; }

  bool contains(const double* x) const {
    const std::size_t n = dimension();
    std::vector<double> r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = x[j] - vertices_[0][j];
    const auto lam = detail::solve_linear(edges_, r);
    if (!lam) return false;
    double s = 0.0;
    for (double l : *lam) {
      if (l < 0.0) return false;
      s += l;
    }
    return s <= 1.0;
  }

 private:
  std::vector<std::vector<double>> vertices_;
  std::vector<double> edges_;  // column i is vertex i+1 minus vertex 0
  double volume_ = 0.0;
};

struct Ball {
  std::vector<double> center;
  double radius = 1.0;
};

/// {x : A x <= b}. The bounding box is enumerated from vertices when not supplied.
struct HPolytope {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<Interval> bounds;
};

using ConvexBody = std::variant<Box, Simplex, Ball, HPolytope>;

inline std::size_t dimension(const ConvexBody& body) {
  return std::visit(
      [](const auto& k) -> std::size_t {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Box>) return k.sides.size();
        else if constexpr (std::is_same_v<T, Simplex>) return k.dimension();
        else if constexpr (std::is_same_v<T, Ball>) return k.center.size();
        else return k.a.empty() ? 0 : k.a.front().size();
      },
      body);
}

inline double unit_ball_volume(std::size_t n) {
  return std::pow(std::numbers::pi, 0.5 * static_cast<double>(n)) / std::tgamma(0.5 * static_cast<double>(n) + 1.0);
}

/// Exact volume; nullopt for H-polytopes.
inline std::optional<double> volume(const ConvexBody& body) {
  if (const auto* box = std::get_if<Box>(&body)) {
    double v = 1.0;
    for (const auto& s : box->sides) v *= s.length();
    return v;
  }
  if (const auto* s = std::get_if<Simplex>(&body)) return s->volume();
  if (const auto* ball = std::get_if<Ball>(&body))
    return unit_ball_volume(ball->center.size()) * std::pow(ball->radius, static_cast<double>(ball->center.size()));
  return std::nullopt;
}

inline bool contains(const ConvexBody& body, const double* x) {
  if (const auto* box = std::get_if<Box>(&body)) {
    for (std::size_t k = 0; k < box->sides.size(); ++k)
      if (x[k] < box->sides[k].lo || x[k] > box->sides[k].hi) return false;
    return true;
  }
  if (const auto* s = std::get_if<Simplex>(&body)) return s->contains(x);
  if (const auto* ball = std::get_if<Ball>(&body)) {
    double r2 = 0.0;
    for (std::size_t k = 0; k < ball->center.size(); ++k) r2 += (x[k] - ball->center[k]) * (x[k] - ball->center[k]);
    return r2 <= ball->radius * ball->radius;
  }
  const auto& p = std::get<HPolytope>(body);
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < p.a[i].size(); ++k) s += p.a[i][k] * x[k];
    if (s > p.b[i]) return false;
  }
  return true;
}

namespace detail {

/// Bounding box of {A x <= b} from its vertices: every n-subset of rows is
/// solved as equalities and feasible solutions are kept.
inline std::vector<Interval> enumerate_bounds(const HPolytope& p) {
  const std::size_t m = p.a.size();
  if (m == 0) throw std::invalid_argument("HPolytope: no constraints");
  const std::size_t n = p.a.front().size();
  std::vector<Interval> box(n, Interval{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()});
  std::vector<std::size_t> pick(n);
  for (std::size_t k = 0; k < n; ++k) pick[k] = k;
  std::size_t combos = 0;
  bool found = false;
  while (n <= m) {
    if (++combos > 2'000'000) throw std::invalid_argument("HPolytope: too many constraints to enumerate; supply bounds");
    std::vector<double> M(n * n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) M[i * n + j] = p.a[pick[i]][j];
      r[i] = p.b[pick[i]];
    }
    if (auto x = solve_linear(M, r)) {
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += p.a[i][j] * (*x)[j];
        ok = s <= p.b[i] + 1e-9 * (1.0 + std::abs(p.b[i]));
      }
      if (ok) {
        found = true;
        for (std::size_t j = 0; j < n; ++j) {
          box[j].lo = std::min(box[j].lo, (*x)[j]);
          box[j].hi = std::max(box[j].hi, (*x)[j]);
        }
      }
    }
    // next n-subset in lexicographic order
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == m - n + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (!found) throw std::invalid_argument("HPolytope: no vertices found (empty or unbounded)");
  for (const auto& s : box)
    if (!(s.hi > s.lo)) throw std::invalid_argument("HPolytope: body has empty interior");
  return box;
}

}  // namespace detail

inline std::vector<Interval> bounding_box(const ConvexBody& body) {
  if (const auto* box = std::get_if<Box>(&body)) return box->sides;
  if (const auto* s = std::get_if<Simplex>(&body)) {
    const std::size_t n = s->dimension();
    std::vector<Interval> out(n, Interval{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()});
    for (const auto& v : s->vertices())
      for (std::size_t k = 0; k < n; ++k) {
        out[k].lo = std::min(out[k].lo, v[k]);
        out[k].hi = std::max(out[k].hi, v[k]);
      }
    return out;
  }
  if (const auto* ball = std::get_if<Ball>(&body)) {
    std::vector<Interval> out;
    for (double c : ball->center) out.push_back({c - ball->radius, c + ball->radius});
    return out;
  }
  const auto& p = std::get<HPolytope>(body);
  return p.bounds.empty() ? detail::enumerate_bounds(p) : p.bounds;
}

/// The body dilated about the origin to volume 1 (exact volumes only).
inline ConvexBody scaled_to_unit_volume(const ConvexBody& body) {
  const auto v = volume(body);
  if (!v) throw std::invalid_argument("scaled_to_unit_volume: volume unknown");
  const double c = std::pow(*v, -1.0 / static_cast<double>(dimension(body)));
  if (const auto* box = std::get_if<Box>(&body)) {
    Box out = *box;
    for (auto& s : out.sides) s = {s.lo * c, s.hi * c};
    return out;
  }
  if (const auto* s = std::get_if<Simplex>(&body)) {
    auto vs = s->vertices();
    for (auto& v0 : vs)
      for (double& x : v0) x *= c;
    return Simplex(std::move(vs));
  }
  Ball out = std::get<Ball>(body);
  for (double& x : out.center) x *= c;
  out.radius *= c;
  return out;
}

/// Inverse CDF of a probability density, exact up to bisection on polynomial pieces.
class InverseCdf {
 public:
  explicit InverseCdf(const PiecewiseDensity1D& rho) : rho_(rho) {
    if (std::abs(rho.mass() - 1.0) > 1e-9) throw std::invalid_argument("InverseCdf: density must have unit mass");
    if (!rho.is_nonnegative()) throw std::invalid_argument("InverseCdf: density must be nonnegative");
    const auto& b = rho.breakpoints();
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      cum_.push_back(rho.cdf(b[i]));
      const Polynomial1D big = rho.pieces()[i].antiderivative();
      prim_.push_back(big - Polynomial1D::constant(big(b[i])));
    }
    cum_.push_back(rho.mass());
  }

  double operator()(double u) const {
    const double target = u * rho_.mass();
    auto it = std::upper_bound(cum_.begin(), cum_.end() - 1, target);
    std::size_t i = static_cast<std::size_t>(it - cum_.begin());
    i = i == 0 ? 0 : i - 1;
    // skip zero-mass pieces
    while (i + 2 < cum_.size() && cum_[i + 1] <= target) ++i;
    const auto& b = rho_.breakpoints();
    const Polynomial1D& piece = rho_.pieces()[i];
    const double rest = target - cum_[i];
    if (piece.degree() == 0) {
      const double c = piece.coefficient(0);
      return c > 0.0 ? std::min(b[i] + rest / c, b[i + 1]) : b[i];
    }
    return solve_monotone(prim_[i], b[i], b[i + 1], rest);
  }

 private:
  PiecewiseDensity1D rho_;
  std::vector<double> cum_;
  std::vector<Polynomial1D> prim_;
};

/// Product of 1-D densities or the uniform distribution on a convex body, with
/// an optional concavity tag s (metadata only).
class SampleableMeasureND {
 public:
  static SampleableMeasureND product(std::vector<PiecewiseDensity1D> factors, std::optional<double> s = std::nullopt) {
    if (factors.empty()) throw std::invalid_argument("product measure: need at least one factor");
    SampleableMeasureND m;
    for (const auto& f : factors) m.quantiles_.emplace_back(f);
    m.factors_ = std::move(factors);
    m.s_ = s;
    return m;
  }

  /// Product of n uniform factors on [-1/2, 1/2].
  static SampleableMeasureND cube(int n) {
    return product(std::vector<PiecewiseDensity1D>(static_cast<std::size_t>(n), PiecewiseDensity1D::uniform(-0.5, 0.5)),
                   1.0 / n);
  }

  static SampleableMeasureND uniform(ConvexBody body) {
    SampleableMeasureND m;
    m.bbox_ = bounding_box(body);
    const std::size_t n = corput::dimension(body);
    if (n == 0) throw std::invalid_argument("uniform measure: zero-dimensional body");
    double box_volume = 1.0;
    for (const auto& s : m.bbox_) box_volume *= s.length();
    if (const auto v = volume(body)) {
      m.acceptance_ = *v / box_volume;
    } else {
      // pilot estimate for bodies without a closed-form volume
      constexpr std::size_t pilot = 1u << 20;
      std::size_t hits = 0;
      std::vector<double> x(n);
      for (std::size_t i = 0; i < pilot; ++i) {
        CounterRng rng(0x5eed, i);
        for (std::size_t k = 0; k < n; ++k) x[k] = rng.uniform(m.bbox_[k].lo, m.bbox_[k].hi);
        hits += contains(body, x.data()) ? 1 : 0;
      }
      m.acceptance_ = static_cast<double>(hits) / pilot;
    }
    if (m.acceptance_ < 1e-6) throw std::invalid_argument("uniform measure: rejection acceptance below 1e-6 (body too thin)");
    m.body_ = std::move(body);
    m.s_ = 1.0 / static_cast<double>(n);
    return m;
  }

  std::size_t dimension() const { return body_ ? corput::dimension(*body_) : factors_.size(); }
  std::optional<double> concavity() const { return s_; }
  bool is_product() const { return !body_.has_value(); }
  const std::vector<PiecewiseDensity1D>& factors() const { return factors_; }
  const ConvexBody* body() const { return body_ ? &*body_ : nullptr; }
  double acceptance() const { return acceptance_; }

  std::vector<Interval> support_box() const {
    if (body_) return bbox_;
    std::vector<Interval> out;
    for (const auto& f : factors_) out.push_back(f.support());
    return out;
  }

  /// Writes one draw into x[0..n); returns the number of proposals used.
  std::uint64_t draw(CounterRng& rng, double* x) const {
    if (!body_) {
      for (std::size_t k = 0; k < quantiles_.size(); ++k) x[k] = quantiles_[k](rng.uniform());
      return 1;
    }
    for (std::uint64_t attempt = 1; attempt <= 4'000'000'000ULL; ++attempt) {
      for (std::size_t k = 0; k < bbox_.size(); ++k) x[k] = rng.uniform(bbox_[k].lo, bbox_[k].hi);
      if (contains(*body_, x)) return attempt;
    }
    throw std::runtime_error("rejection sampling: attempt budget exhausted");
  }

 private:
  SampleableMeasureND() = default;

  std::vector<PiecewiseDensity1D> factors_;
  std::vector<InverseCdf> quantiles_;
  std::optional<ConvexBody> body_;
  std::vector<Interval> bbox_;
  double acceptance_ = 1.0;
  std::optional<double> s_;
};

inline constexpr std::size_t kSampleChunk = 8192;

/// Evaluates fn(x) on `count` draws; draw i uses stream i of `seed`, so the
/// result does not depend on the thread count. fn is copied once per chunk.
template <class Fn>
std::vector<double> sample_map(const SampleableMeasureND& mu, std::size_t count, std::uint64_t seed, const Fn& fn) {
  std::vector<double> out(count);
  const std::size_t n = mu.dimension();
  parallel_chunks(count, kSampleChunk, [&](std::size_t, std::size_t begin, std::size_t end) {
    Fn local = fn;
    std::vector<double> x(n);
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(seed, i);
      mu.draw(rng, x.data());
      out[i] = local(static_cast<const double*>(x.data()));
    }
  });
  return out;
}

/// `count` i.i.d. points, row-major (count x n).
inline std::vector<double> sample(const SampleableMeasureND& mu, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
  const std::size_t n = mu.dimension();
  std::vector<double> out(count * n);
  parallel_chunks(count, kSampleChunk, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(seed, i);
      mu.draw(rng, out.data() + i * n);
    }
  });
  return out;
}

struct KrugResult {
  double tv_lhs = 0.0;
  double krug_rhs = 0.0;
  bool log_concave = true;
};

namespace detail {

inline bool midpoint_log_concave(double fx, double fy, double fm) { return fm * fm >= fx * fy * (1.0 - 1e-9) - 1e-300; }

}  // namespace detail

/// 1-D Krug check: ||D_theta rho||_TV against 2 |theta| sup rho.
inline KrugResult krug_check(const PiecewiseDensity1D& rho, double theta = 1.0) {
  if (theta == 0.0) throw std::invalid_argument("krug_check: direction must be nonzero");
  KrugResult r;
  r.tv_lhs = std::abs(theta) * bv_seminorm(rho);
  r.krug_rhs = 2.0 * std::abs(theta) * rho.sup_norm();
  // midpoint spot check on grid pairs strictly inside the support
  const Interval s = rho.support();
  constexpr int m = 256;
  std::vector<double> v(m + 1);
  for (int i = 0; i <= m; ++i) v[static_cast<std::size_t>(i)] = rho(s.lo + s.length() * (i + 0.5) / (m + 1));
  for (int i = 0; i <= m && r.log_concave; ++i)
    for (int j = i + 2; j <= m; j += 2)
      if (!detail::midpoint_log_concave(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)],
                                        v[static_cast<std::size_t>((i + j) / 2)])) {
        r.log_concave = false;
        break;
      }
  return r;
}

/// Density on the plane, zero outside the given box.
struct Density2D {
  std::function<double(double, double)> value;
  Interval x;
  Interval y;
};

/// 2-D Krug check. The left side is the total variation along theta summed
/// over a rotated tensor grid of `resolution` lines; the right side integrates
/// the per-line supremum (grid search plus golden refinement) over a separate
/// line family four times as dense.
inline KrugResult krug_check(const Density2D& rho, std::array<double, 2> theta, int resolution = 2000) {
  const double norm = std::hypot(theta[0], theta[1]);
  if (std::abs(norm - 1.0) > 1e-12) throw std::invalid_argument("krug_check: theta must be a unit vector");
  const double c = theta[0], s = theta[1];
  // coordinates: p = u theta + v theta_perp, theta_perp = (-s, c)
  double u0 = std::numeric_limits<double>::infinity(), u1 = -u0, v0 = u0, v1 = -u0;
  for (double x : {rho.x.lo, rho.x.hi})
    for (double y : {rho.y.lo, rho.y.hi}) {
      const double u = c * x + s * y, v = -s * x + c * y;
      u0 = std::min(u0, u);
      u1 = std::max(u1, u);
      v0 = std::min(v0, v);
      v1 = std::max(v1, v);
    }
  auto at = [&](double u, double v) {
    const double x = c * u - s * v, y = s * u + c * v;
    if (x < rho.x.lo || x > rho.x.hi || y < rho.y.lo || y > rho.y.hi) return 0.0;
    return rho.value(x, y);
  };
  const int N = resolution;
  const double hu = (u1 - u0) / N;

  CompensatedSum lhs;
  const double hv = (v1 - v0) / N;
  for (int j = 0; j < N; ++j) {
    const double v = v0 + (j + 0.5) * hv;
    double prev = 0.0, tv = 0.0;
    for (int i = -1; i <= N + 1; ++i) {
      const double cur = at(u0 + (i + 0.5) * hu, v);
      tv += std::abs(cur - prev);
      prev = cur;
    }
    lhs.add(tv * hv);
  }

  CompensatedSum rhs;
  const int lines = 4 * N;
  const double hr = (v1 - v0) / lines;
  for (int j = 0; j < lines; ++j) {
    const double v = v0 + (j + 0.5) * hr;
    int best_i = 0;
    double best = -1.0;
    for (int i = 0; i <= N; ++i) {
      const double val = at(u0 + i * hu, v);
      if (val > best) {
        best = val;
        best_i = i;
      }
    }
    double a = u0 + std::max(0, best_i - 1) * hu, b = u0 + std::min(N, best_i + 1) * hu;
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
    double f1 = at(x1, v), f2 = at(x2, v);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kInvPhi * (b - a);
        f2 = at(x2, v);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kInvPhi * (b - a);
        f1 = at(x1, v);
      }
    }
    rhs.add(2.0 * std::max({best, f1, f2}) * hr);
  }

  KrugResult r;
  r.tv_lhs = lhs.value();
  r.krug_rhs = rhs.value();
  for (std::uint64_t i = 0; i < 4000 && r.log_concave; ++i) {
    CounterRng rng(0x10c, i);
    const double xa = rng.uniform(rho.x.lo, rho.x.hi), ya = rng.uniform(rho.y.lo, rho.y.hi);
    const double xb = rng.uniform(rho.x.lo, rho.x.hi), yb = rng.uniform(rho.y.lo, rho.y.hi);
    const double fa = rho.value(xa, ya), fb = rho.value(xb, yb);
    if (fa <= 0.0 || fb <= 0.0) continue;
    r.log_concave = detail::midpoint_log_concave(fa, fb, rho.value(0.5 * (xa + xb), 0.5 * (ya + yb)));
  }
  return r;
}

}  // namespace corput

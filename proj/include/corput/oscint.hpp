#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "corput/density1d.hpp"
#include "corput/multimeasure.hpp"
#include "corput/numeric.hpp"
#include "corput/parallel.hpp"
#include "corput/polynomial.hpp"
#include "corput/pushforward.hpp"

namespace corput {

enum class OscMethod { Auto, Exact1D, Tensor, MonteCarlo };

inline std::string to_string(OscMethod m) {
  switch (m) {
    case OscMethod::Auto: return "auto";
    case OscMethod::Exact1D: return "exact";
    case OscMethod::Tensor: return "tensor";
    case OscMethod::MonteCarlo: return "mc";
  }
  return "auto";
}

inline OscMethod parse_osc_method(const std::string& s) {
  if (s == "auto") return OscMethod::Auto;
  if (s == "exact") return OscMethod::Exact1D;
  if (s == "tensor") return OscMethod::Tensor;
  if (s == "mc") return OscMethod::MonteCarlo;
  throw std::invalid_argument("unknown method '" + s + "' (auto, exact, tensor, mc)");
}

struct OscValue {
  double t = 0.0;
  std::complex<double> value;
  double abs_error = 0.0;
  OscMethod method = OscMethod::Auto;
  std::string warning;
};

struct OscOptions {
  OscMethod method = OscMethod::Auto;
  std::size_t count = 1'000'000;
  std::uint64_t seed = 0;
  std::size_t panel_cap = 200'000;
  std::size_t tensor_node_cap = 40'000'000;
};

namespace detail {

using cplx = std::complex<double>;

inline cplx unit_phase(double phase) {
  // sign handled outside the trig calls so that -t gives the exact conjugate
  const double a = std::abs(phase);
  const double s = std::sin(a);
  return {std::cos(a), phase < 0 ? -s : s};
}

inline cplx gl16_panel(const Polynomial1D& rho, const Polynomial1D& g, double t, double a, double b) {
  const auto& gl = gauss_legendre16();
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  cplx s = 0.0;
  for (std::size_t i = 0; i < 16; ++i) {
    const double x = c + r * gl.nodes[i];
    s += gl.weights[i] * rho(x) * unit_phase(t * g(x));
  }
  return s * r;
}

struct PanelBudget {
  std::size_t used = 0;
  std::size_t cap = 0;
  bool exceeded() const { return used > cap; }
};

inline cplx adaptive_panel(const Polynomial1D& rho, const Polynomial1D& g, double t, double a, double b, cplx whole,
                           double scale, int depth, PanelBudget& budget, double& err) {
  const double m = 0.5 * (a + b);
  const cplx left = gl16_panel(rho, g, t, a, m), right = gl16_panel(rho, g, t, m, b);
  const cplx halves = left + right;
  const double diff = std::abs(halves - whole);
  if (diff <= 1e-13 * scale * (b - a) || depth >= 40 || budget.exceeded()) {
    ++budget.used;
    err += diff;
    return halves;
  }
  return adaptive_panel(rho, g, t, a, m, left, scale, depth + 1, budget, err) +
         adaptive_panel(rho, g, t, m, b, right, scale, depth + 1, budget, err);
}

}  // namespace detail

/// int e^{i t g} rho, split at the density breakpoints and the critical points
/// of g; each monotone cell is cut where the phase has advanced by 2 pi and
/// every panel is integrated by 16-point Gauss-Legendre, halved until the two
/// estimates agree. nullopt when the panel budget is exhausted.
inline std::optional<OscValue> osc_integral_exact(const PiecewiseDensity1D& rho, const Polynomial1D& g, double t,
                                                  std::size_t panel_cap = 200'000) {
  const double at = std::abs(t);
  detail::PanelBudget budget{0, panel_cap};
  detail::cplx total = 0.0;
  double err = 0.0;
  const auto& b = rho.breakpoints();
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const Polynomial1D& p = rho.pieces()[i];
    const double scale = std::max({std::abs(p(b[i])), std::abs(p(b[i + 1])), std::abs(p(0.5 * (b[i] + b[i + 1]))), 1e-300});
    const auto pts = monotone_breakpoints(g, b[i], b[i + 1]);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      const double u = pts[k], v = pts[k + 1], gu = g(u), gv = g(v);
      const double variation = at * std::abs(gv - gu);
      const double m = std::max(1.0, std::ceil(variation / (2.0 * std::numbers::pi)));
      if (m > static_cast<double>(panel_cap)) return std::nullopt;
      const auto panels = static_cast<std::size_t>(m);
      double left = u;
      for (std::size_t j = 1; j <= panels; ++j) {
        const double right = j == panels ? v : solve_monotone(g, u, v, gu + (gv - gu) * static_cast<double>(j) / m);
        if (right > left) {
          const detail::cplx whole = detail::gl16_panel(p, g, at, left, right);
          total += detail::adaptive_panel(p, g, at, left, right, whole, scale, 0, budget, err);
        }
        left = right;
        if (budget.exceeded()) return std::nullopt;
      }
    }
  }
  OscValue out;
  out.t = t;
  out.value = t < 0 ? std::conj(total) : total;
  out.abs_error = err;
  out.method = OscMethod::Exact1D;
  return out;
}

namespace detail {

/// Upper bound of |d f / d x_k| over a box.
inline double partial_bound(const Polynomial& f, std::size_t k, const std::vector<Interval>& box) {
  double bound = 0.0;
  for (const auto& [e, c] : f.terms()) {
    if (e[k] == 0) continue;
    double m = std::abs(c) * e[k];
    for (std::size_t j = 0; j < e.size(); ++j) {
      const double r = std::max(std::abs(box[j].lo), std::abs(box[j].hi));
      m *= std::pow(r, j == k ? e[j] - 1 : e[j]);
    }
    bound += m;
  }
  return bound;
}

struct AxisRule {
  std::vector<double> x;
  std::vector<double> w;  // quadrature weight times the factor density
};

inline AxisRule axis_rule(const PiecewiseDensity1D& rho, double t, double lipschitz, double multiplier) {
  const auto& gl = gauss_legendre16();
  AxisRule r;
  const auto& b = rho.breakpoints();
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const double len = b[i + 1] - b[i];
    const double panels = multiplier * std::max(1.0, std::ceil(std::abs(t) * lipschitz * len / (2.0 * std::numbers::pi)));
    const auto np = static_cast<std::size_t>(panels);
    const double h = len / static_cast<double>(np);
    for (std::size_t p = 0; p < np; ++p) {
      const double c = b[i] + (static_cast<double>(p) + 0.5) * h;
      for (std::size_t q = 0; q < 16; ++q) {
        const double x = c + 0.5 * h * gl.nodes[q];
        r.x.push_back(x);
        r.w.push_back(0.5 * h * gl.weights[q] * rho.pieces()[i](x));
      }
    }
  }
  return r;
}

inline std::optional<cplx> tensor_sum(const std::vector<PiecewiseDensity1D>& factors, const Polynomial& f, double t,
                                      double multiplier, std::size_t node_cap) {
  const std::size_t n = factors.size();
  std::vector<Interval> box;
  for (const auto& r : factors) box.push_back(r.support());
  std::vector<AxisRule> rules;
  double nodes = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    rules.push_back(axis_rule(factors[k], t, partial_bound(f, k, box), multiplier));
    nodes *= static_cast<double>(rules.back().x.size());
    if (nodes > static_cast<double>(node_cap)) return std::nullopt;
  }
  const PolynomialEvaluator ev(f);
  const std::size_t n0 = rules[0].x.size();
  // outer axis in parallel chunks, partial sums reduced in chunk order
  const std::size_t chunk = 16;
  std::vector<cplx> partial(chunk_count(n0, chunk));
  parallel_chunks(n0, chunk, [&](std::size_t c, std::size_t begin, std::size_t end) {
    std::vector<double> x(n), scratch;
    cplx acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      x[0] = rules[0].x[i];
      const double w0 = rules[0].w[i];
      if (n == 1) {
        acc += w0 * unit_phase(t * ev(x.data(), scratch));
        continue;
      }
      for (std::size_t j = 0; j < rules[1].x.size(); ++j) {
        x[1] = rules[1].x[j];
        const double w1 = w0 * rules[1].w[j];
        if (n == 2) {
          acc += w1 * unit_phase(t * ev(x.data(), scratch));
          continue;
        }
        cplx inner = 0.0;
        for (std::size_t l = 0; l < rules[2].x.size(); ++l) {
          x[2] = rules[2].x[l];
          inner += rules[2].w[l] * unit_phase(t * ev(x.data(), scratch));
        }
        acc += w1 * inner;
      }
    }
    partial[c] = acc;
  });
  cplx total = 0.0;
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace detail

/// Tensor Gauss-Legendre over a product of at most three factors. Panel
/// counts per axis come from a bound on the partial derivatives of the phase;
/// the error estimate compares against twice as many panels per axis.
inline std::optional<OscValue> osc_integral_tensor(const std::vector<PiecewiseDensity1D>& factors, const Polynomial& f,
                                                   double t, std::size_t node_cap = 40'000'000) {
  if (factors.size() > 3) throw std::invalid_argument("osc_integral: tensor method supports n <= 3");
  if (static_cast<std::size_t>(f.dimension()) != factors.size())
    throw std::invalid_argument("osc_integral: dimension mismatch");
  const double at = std::abs(t);
  const auto coarse = detail::tensor_sum(factors, f, at, 1.0, node_cap);
  if (!coarse) return std::nullopt;
  const auto fine = detail::tensor_sum(factors, f, at, 2.0, node_cap);
  if (!fine) return std::nullopt;
  OscValue out;
  out.t = t;
  out.value = t < 0 ? std::conj(*fine) : *fine;
  out.abs_error = std::abs(*fine - *coarse);
  out.method = OscMethod::Tensor;
  return out;
}

/// Mean of e^{i t v} over precomputed phase values; stderr reported as 1/sqrt(count).
inline OscValue osc_from_samples(const std::vector<double>& values, double t) {
  CompensatedSum re, im;
  for (double v : values) {
    const auto z = detail::unit_phase(t * v);
    re.add(z.real());
    im.add(z.imag());
  }
  const double n = static_cast<double>(values.size());
  OscValue out;
  out.t = t;
  out.value = {re.value() / n, im.value() / n};
  out.abs_error = 1.0 / std::sqrt(n);
  out.method = OscMethod::MonteCarlo;
  return out;
}

namespace detail {

inline bool is_one_dimensional_product(const SampleableMeasureND& mu) { return mu.is_product() && mu.dimension() == 1; }

}  // namespace detail

/// Oscillatory integral over t values sharing one method; MC draws are made
/// once and reused for every t.
inline std::vector<OscValue> osc_sweep(const SampleableMeasureND& mu, const Polynomial& f, const std::vector<double>& ts,
                                       const OscOptions& opt = {}) {
  if (static_cast<std::size_t>(f.dimension()) != mu.dimension())
    throw std::invalid_argument("osc_integral: dimension mismatch");
  OscMethod method = opt.method;
  if (method == OscMethod::Exact1D && !detail::is_one_dimensional_product(mu))
    throw std::invalid_argument("osc_integral: exact method needs a one-dimensional density");
  if (method == OscMethod::Tensor && (!mu.is_product() || mu.dimension() > 3))
    throw std::invalid_argument("osc_integral: tensor method needs a product measure with n <= 3");
  if (method == OscMethod::Auto)
    method = detail::is_one_dimensional_product(mu) ? OscMethod::Exact1D
             : mu.is_product() && mu.dimension() <= 3 ? OscMethod::Tensor
                                                       : OscMethod::MonteCarlo;

  std::vector<OscValue> out(ts.size());
  std::vector<std::size_t> fallback;
  if (method != OscMethod::MonteCarlo) {
    std::vector<char> failed(ts.size(), 0);
    parallel_chunks(ts.size(), 1, [&](std::size_t, std::size_t i, std::size_t) {
      std::optional<OscValue> v;
      if (method == OscMethod::Exact1D)
        v = osc_integral_exact(mu.factors()[0], as_univariate(f), ts[i], opt.panel_cap);
      else
        v = osc_integral_tensor(mu.factors(), f, ts[i], opt.tensor_node_cap);
      if (v)
        out[i] = *v;
      else
        failed[i] = 1;
    });
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (failed[i]) fallback.push_back(i);
  } else {
    for (std::size_t i = 0; i < ts.size(); ++i) fallback.push_back(i);
  }
  if (!fallback.empty()) {
    const auto values = sample_values(mu, f, opt.count, opt.seed);
    parallel_chunks(fallback.size(), 1, [&](std::size_t, std::size_t k, std::size_t) {
      const std::size_t i = fallback[k];
      out[i] = osc_from_samples(values, ts[i]);
      if (method != OscMethod::MonteCarlo) out[i].warning = "panel budget exceeded; Monte Carlo fallback";
    });
  }
  return out;
}

inline OscValue osc_integral(const SampleableMeasureND& mu, const Polynomial& f, double t, const OscOptions& opt = {}) {
  return osc_sweep(mu, f, {t}, opt).front();
}

/// (f - m) / s with m = int f dmu and s = int |f - m| dmu.
struct NormalizedPhase {
  Polynomial phase;
  double mean = 0.0;
  double abs_dev = 0.0;
  double mean_stderr = 0.0;
  double abs_dev_stderr = 0.0;
  std::string method;
};

namespace detail {

/// int |g(x1, x2)| rho1(x1) rho2(x2): the inner integral is exact for each x1
/// and the outer one uses Gauss-Legendre panels halved until they agree.
inline double abs_moment_2d(const std::vector<PiecewiseDensity1D>& factors, const Polynomial& g, double& err) {
  const auto& r2 = factors[1];
  const std::vector<double> dir{0.0, 1.0};
  auto inner = [&](double x1) {
    const std::vector<double> y{x1, 0.0};
    const Polynomial1D line = restrict_line(g, y, dir);
    CompensatedSum s;
    const auto& b = r2.breakpoints();
    for (std::size_t i = 0; i + 1 < b.size(); ++i) s.add(abs_integral(line * r2.pieces()[i], b[i], b[i + 1]));
    return s.value();
  };
  const auto& gl = gauss_legendre16();
  auto panel = [&](const Polynomial1D& w, double a, double b) {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
      const double x = c + r * gl.nodes[i];
      s += gl.weights[i] * w(x) * inner(x);
    }
    return s * r;
  };
  CompensatedSum total;
  err = 0.0;
  std::function<double(const Polynomial1D&, double, double, double, int)> refine = [&](const Polynomial1D& w, double a,
                                                                                        double b, double whole, int depth) {
    const double m = 0.5 * (a + b);
    const double l = panel(w, a, m), r = panel(w, m, b);
    if (std::abs(l + r - whole) <= 1e-12 * (b - a) || depth >= 30) {
      err += std::abs(l + r - whole);
      return l + r;
    }
    return refine(w, a, m, l, depth + 1) + refine(w, m, b, r, depth + 1);
  };
  const auto& b1 = factors[0].breakpoints();
  for (std::size_t i = 0; i + 1 < b1.size(); ++i) {
    const Polynomial1D& w = factors[0].pieces()[i];
    // start from 16 panels per piece; |g| has kinks along its zero set
    const double len = (b1[i + 1] - b1[i]) / 16.0;
    for (int p = 0; p < 16; ++p) {
      const double a = b1[i] + p * len, c = a + len;
      total.add(refine(w, a, c, panel(w, a, c), 0));
    }
  }
  return total.value();
}

}  // namespace detail

inline NormalizedPhase normalize_phase(const SampleableMeasureND& mu, const Polynomial& f, std::size_t count = 1'000'000,
                                       std::uint64_t seed = 0) {
  if (static_cast<std::size_t>(f.dimension()) != mu.dimension())
    throw std::invalid_argument("normalize_phase: dimension mismatch");
  NormalizedPhase out;
  std::optional<std::vector<double>> values;
  auto draws = [&]() -> const std::vector<double>& {
    if (!values) values = sample_values(mu, f, count, seed);
    return *values;
  };
  const int n = f.dimension();
  if (mu.is_product()) {
    std::vector<std::vector<double>> moments;
    for (const auto& r : mu.factors()) moments.push_back(r.moments(std::max(1, f.individual_degree())));
    out.mean = product_moment(f, moments);
  } else {
    CompensatedSum s, s2;
    for (double v : draws()) {
      s.add(v);
      s2.add(v * v);
    }
    const double c = static_cast<double>(count);
    out.mean = s.value() / c;
    out.mean_stderr = std::sqrt(std::max(0.0, s2.value() / c - out.mean * out.mean) / c);
  }
  const Polynomial centered = f - Polynomial::constant(n, out.mean);
  if (mu.is_product() && n == 1) {
    const auto& rho = mu.factors()[0];
    const Polynomial1D g = as_univariate(centered);
    CompensatedSum s;
    const auto& b = rho.breakpoints();
    for (std::size_t i = 0; i + 1 < b.size(); ++i) s.add(abs_integral(g * rho.pieces()[i], b[i], b[i + 1]));
    out.abs_dev = s.value();
    out.method = "exact";
  } else if (mu.is_product() && n == 2) {
    double err = 0.0;
    out.abs_dev = detail::abs_moment_2d(mu.factors(), centered, err);
    out.abs_dev_stderr = err;
    out.method = "quadrature";
  } else {
    CompensatedSum s, s2;
    for (double v : draws()) {
      const double a = std::abs(v - out.mean);
      s.add(a);
      s2.add(a * a);
    }
    const double c = static_cast<double>(count);
    out.abs_dev = s.value() / c;
    out.abs_dev_stderr = std::sqrt(std::max(0.0, s2.value() / c - out.abs_dev * out.abs_dev) / c);
    out.method = "mc";
  }
  const double scale = std::max(1.0, std::abs(out.mean));
  if (!(out.abs_dev > 1e-14 * scale)) throw std::invalid_argument("normalize_phase: f is constant on the support");
  out.phase = centered * (1.0 / out.abs_dev);
  return out;
}

struct DecayFit {
  double slope = 0.0;
  double log_constant = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
  /// sup over the fitted points of |I(t)| t^{1/d} (0 when no d was given)
  double sup_scaled = 0.0;
  double constant() const { return std::exp(log_constant); }
};

/// Least squares of log |I| against log t over the points in [t_min, t_max]
/// whose value is at least twice the noise floor. Needs 8 such points.
inline DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& value, double d = 0.0,
                          double t_min = 0.0, double t_max = std::numeric_limits<double>::infinity(),
                          double noise_floor = 0.0) {
  if (t.size() != value.size()) throw std::invalid_argument("decay_fit: t and values differ in length");
  if (t.size() < 8) throw std::invalid_argument("decay_fit: need at least 8 points");
  std::vector<double> lx, ly;
  DecayFit fit;
  fit.t_min = std::numeric_limits<double>::infinity();
  fit.t_max = 0.0;
  bool any_in_window = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || t[i] < t_min || t[i] > t_max) continue;
    any_in_window = true;
    const double v = std::abs(value[i]);
    if (v < 2.0 * noise_floor || v <= 0.0) continue;
    lx.push_back(std::log(t[i]));
    ly.push_back(std::log(v));
    fit.t_min = std::min(fit.t_min, t[i]);
    fit.t_max = std::max(fit.t_max, t[i]);
    if (d > 0.0) fit.sup_scaled = std::max(fit.sup_scaled, v * std::pow(t[i], 1.0 / d));
  }
  if (any_in_window && lx.empty()) throw std::invalid_argument("decay_fit: all values below the noise floor");
  if (lx.size() < 8) throw std::invalid_argument("decay_fit: fewer than 8 usable points in the window");
  const auto ls = least_squares(lx, ly);
  fit.slope = ls.slope;
  fit.log_constant = ls.intercept;
  fit.r_squared = ls.r_squared;
  fit.points = lx.size();
  return fit;
}

}  // namespace corput

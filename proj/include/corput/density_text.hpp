#pragma once

#include <sstream>
#include <string>
#include <string_view>

#include "corput/density1d.hpp"
#include "corput/poly_text.hpp"

namespace corput {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Splits "[a sep b sep c]" into trimmed items; `rest` receives the remainder.
inline std::vector<std::string_view> bracket_list(std::string_view s, char sep, std::string_view& rest) {
  s = trim(s);
  if (s.empty() || s.front() != '[') throw ParseError("density literal: expected '['");
  const auto close = s.find(']');
  if (close == std::string_view::npos) throw ParseError("density literal: missing ']'");
  std::string_view body = s.substr(1, close - 1);
  rest = s.substr(close + 1);
  std::vector<std::string_view> items;
  while (true) {
    const auto p = body.find(sep);
    items.push_back(trim(body.substr(0, p)));
    if (p == std::string_view::npos) break;
    body.remove_prefix(p + 1);
  }
  return items;
}

inline double parse_number(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError("expected a number, got '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/// Parses `piecewise [t0, t1, ...] [p0(t); p1(t); ...]`.
inline PiecewiseDensity1D parse_density(std::string_view text) {
  std::string_view s = detail::trim(text);
  constexpr std::string_view kw = "piecewise";
  if (s.substr(0, kw.size()) != kw) throw ParseError("density literal must start with 'piecewise'");
  s.remove_prefix(kw.size());
  std::string_view rest;
  const auto bp = detail::bracket_list(s, ',', rest);
  const auto pc = detail::bracket_list(rest, ';', rest);
  if (!detail::trim(rest).empty()) throw ParseError("density literal: trailing text");
  std::vector<double> breaks;
  for (auto b : bp) breaks.push_back(detail::parse_number(b));
  std::vector<Polynomial1D> pieces;
  for (auto p : pc) pieces.push_back(parse_polynomial1d(p));
  try {
    return PiecewiseDensity1D(std::move(breaks), std::move(pieces));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline std::string to_string(const PiecewiseDensity1D& rho) {
  std::string out = "piecewise [";
  const auto& b = rho.breakpoints();
  for (std::size_t i = 0; i < b.size(); ++i) out += (i ? ", " : "") + format_double(b[i]);
  out += "] [";
  const auto& p = rho.pieces();
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "; " : "") + to_string(p[i]);
  return out + "]";
}

/// One CSV line: left,h,w0,w1,...
inline std::string to_csv(const GridMeasure1D& g) {
  std::string out = format_double(g.left) + "," + format_double(g.h);
  for (double w : g.weights) out += "," + format_double(w);
  return out;
}

inline GridMeasure1D parse_grid_csv(std::string_view line) {
  std::vector<double> v;
  while (true) {
    const auto p = line.find(',');
    v.push_back(detail::parse_number(line.substr(0, p)));
    if (p == std::string_view::npos) break;
    line.remove_prefix(p + 1);
  }
  if (v.size() < 3) throw ParseError("grid CSV needs left, h and at least one weight");
  try {
    return GridMeasure1D(v[0], v[1], std::vector<double>(v.begin() + 2, v.end()));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace corput

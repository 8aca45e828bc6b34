#pragma once

#include <string>

#include <json.hpp>

#include "corput/density_text.hpp"
#include "corput/multimeasure.hpp"

namespace corput {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError(where + ": unknown field '" + it.key() + "'");
  }
}

inline double number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

inline std::vector<double> numbers(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, where));
  return out;
}

inline std::vector<std::vector<double>> matrix(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of arrays");
  std::vector<std::vector<double>> out;
  for (const auto& row : j) out.push_back(numbers(row, where));
  return out;
}

inline std::vector<Interval> intervals(const nlohmann::json& j, const std::string& where) {
  std::vector<Interval> out;
  for (const auto& row : matrix(j, where)) {
    if (row.size() != 2 || !(row[0] < row[1])) throw ConfigError(where + ": intervals are [lo, hi] with lo < hi");
    out.push_back({row[0], row[1]});
  }
  return out;
}

}  // namespace detail

/// A 1-D density from a literal string or {"uniform": [a, b]} / {"tent": [a, b]}.
inline PiecewiseDensity1D density_from_json(const nlohmann::json& j) {
  try {
    if (j.is_string()) return parse_density(j.get<std::string>());
    detail::reject_unknown(j, {"uniform", "tent"}, "density");
    if (j.size() != 1) throw ConfigError("density: give exactly one of uniform, tent");
    const bool uni = j.contains("uniform");
    const auto ab = detail::numbers(uni ? j["uniform"] : j["tent"], "density");
    if (ab.size() != 2 || !(ab[0] < ab[1])) throw ConfigError("density: expected [a, b] with a < b");
    return uni ? PiecewiseDensity1D::uniform(ab[0], ab[1]) : PiecewiseDensity1D::tent(ab[0], ab[1]);
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
}

/// Parses {"type": "product"|"box"|"simplex"|"ball"|"hpolytope", ...}.
inline SampleableMeasureND measure_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) throw ConfigError("measure: missing 'type'");
  const std::string type = j["type"].get<std::string>();
  const bool unit = j.value("unit_volume", false);
  auto body_measure = [&](ConvexBody body) {
    try {
      return SampleableMeasureND::uniform(unit ? scaled_to_unit_volume(body) : std::move(body));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("measure: ") + e.what());
    }
  };
  if (type == "product") {
    detail::reject_unknown(j, {"type", "factors", "repeat", "s"}, "measure");
    if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].empty())
      throw ConfigError("measure: product needs a nonempty 'factors' array");
    std::vector<PiecewiseDensity1D> f;
    for (const auto& d : j["factors"]) f.push_back(density_from_json(d));
    const int repeat = j.value("repeat", 1);
    if (repeat < 1) throw ConfigError("measure: repeat must be >= 1");
    std::vector<PiecewiseDensity1D> all;
    for (int r = 0; r < repeat; ++r) all.insert(all.end(), f.begin(), f.end());
    std::optional<double> s;
    if (j.contains("s")) s = detail::number(j["s"], "measure.s");
    try {
      return SampleableMeasureND::product(std::move(all), s);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("measure: ") + e.what());
    }
  }
  if (type == "box") {
    detail::reject_unknown(j, {"type", "intervals", "unit_volume"}, "measure");
    return body_measure(Box{detail::intervals(j.at("intervals"), "measure.intervals")});
  }
  if (type == "simplex") {
    detail::reject_unknown(j, {"type", "vertices", "unit_volume"}, "measure");
    try {
      return body_measure(Simplex(detail::matrix(j.at("vertices"), "measure.vertices")));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("measure: ") + e.what());
    }
  }
  if (type == "ball") {
    detail::reject_unknown(j, {"type", "center", "radius", "unit_volume"}, "measure");
    const double r = detail::number(j.at("radius"), "measure.radius");
    if (!(r > 0.0)) throw ConfigError("measure: radius must be positive");
    return body_measure(Ball{detail::numbers(j.at("center"), "measure.center"), r});
  }
  if (type == "hpolytope") {
    detail::reject_unknown(j, {"type", "A", "b", "bounds"}, "measure");
    if (unit) throw ConfigError("measure: unit_volume needs an exact volume");
    HPolytope p{detail::matrix(j.at("A"), "measure.A"), detail::numbers(j.at("b"), "measure.b"), {}};
    if (p.a.size() != p.b.size() || p.a.empty()) throw ConfigError("measure: A and b must have the same nonzero length");
    for (const auto& row : p.a)
      if (row.size() != p.a.front().size()) throw ConfigError("measure: ragged A");
    if (j.contains("bounds")) p.bounds = detail::intervals(j["bounds"], "measure.bounds");
    return body_measure(std::move(p));
  }
  throw ConfigError("measure: unknown type '" + type + "'");
}

/// Short text forms used on the command line: a JSON object, a density
/// literal (1-D product), `cube:n`, `ball:n` (unit ball) or `simplex:n`.
inline SampleableMeasureND parse_measure_spec(const std::string& text) {
  const auto t = std::string(detail::trim(text));
  if (!t.empty() && t.front() == '{') {
    try {
      return measure_from_json(nlohmann::json::parse(t));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("measure: ") + e.what());
    }
  }
  if (t.rfind("piecewise", 0) == 0) return SampleableMeasureND::product({density_from_json(t)});
  const auto colon = t.find(':');
  if (colon == std::string::npos) throw ConfigError("measure: unrecognized spec '" + t + "'");
  const std::string kind = t.substr(0, colon);
  int n = 0;
  try {
    n = std::stoi(t.substr(colon + 1));
  } catch (const std::exception&) {
    throw ConfigError("measure: bad dimension in '" + t + "'");
  }
  if (n < 1 || n > 10) throw ConfigError("measure: dimension must be 1..10");
  if (kind == "cube") return SampleableMeasureND::cube(n);
  if (kind == "ball") return SampleableMeasureND::uniform(Ball{std::vector<double>(static_cast<std::size_t>(n), 0.0), 1.0});
  if (kind == "simplex") return SampleableMeasureND::uniform(Simplex::standard(n));
  throw ConfigError("measure: unknown kind '" + kind + "'");
}

/// Description echoing the exact volume of bodies when known.
inline nlohmann::json measure_to_json(const SampleableMeasureND& mu) {
  nlohmann::json j;
  j["dimension"] = mu.dimension();
  if (mu.concavity()) j["s"] = *mu.concavity();
  if (mu.is_product()) {
    j["type"] = "product";
    for (const auto& f : mu.factors()) j["factors"].push_back(to_string(f));
    return j;
  }
  const ConvexBody& body = *mu.body();
  static constexpr const char* names[] = {"box", "simplex", "ball", "hpolytope"};
  j["type"] = names[body.index()];
  if (const auto v = volume(body)) j["volume"] = *v;
  j["acceptance"] = mu.acceptance();
  return j;
}

}  // namespace corput

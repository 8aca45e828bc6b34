#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "corput/harness.hpp"

using namespace corput;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;

std::string num(double v) { return std::isfinite(v) ? format_double(v) : std::string("nan"); }

Polynomial phase_for(const std::string& text, const SampleableMeasureND& mu) {
  try {
    const Polynomial f = parse_polynomial(text, static_cast<int>(mu.dimension()));
    if (static_cast<std::size_t>(f.dimension()) != mu.dimension())
      throw ConfigError("--f uses variables beyond the measure dimension " + std::to_string(mu.dimension()));
    return f;
  } catch (const ParseError& e) {
    throw ConfigError(std::string("--f: ") + e.what());
  }
}

bool one_dimensional(const SampleableMeasureND& mu) { return mu.is_product() && mu.dimension() == 1; }

int run_verify(const std::string& config, const std::string& out) {
  const auto cfg = load_config(config);
  const auto report = run_suite(cfg);
  write_report(report, out);
  std::cout << report.suite << ": " << (report.verdict() ? "pass" : "fail") << " (" << report.failures() << " of "
            << report.cases.size() << " cases failed)\n";
  for (const auto& [name, value] : report.constants) std::cout << "  " << name << " = " << num(value) << '\n';
  return report.verdict() ? kPass : kFail;
}

struct OscArgs {
  std::string f, measure = "cube:1", method = "auto";
  double t_min = 1.0, t_max = 100.0;
  std::size_t points = 32, count = 1'000'000;
  std::uint64_t seed = 0;
};

int run_oscint(const OscArgs& a) {
  const auto mu = parse_measure_spec(a.measure);
  const auto f = phase_for(a.f, mu);
  if (!(a.t_min > 0.0) || a.t_max < a.t_min || a.points < 1) throw ConfigError("oscint: need 0 < t-min <= t-max, points >= 1");
  OscMethod method;
  try {
    method = parse_osc_method(a.method);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto ts = log_space(a.t_min, a.t_max, a.points);
  std::cout << "t,re,im,abs,err\n";
  for (const auto& v : osc_sweep(mu, f, ts, {.method = method, .count = a.count, .seed = a.seed})) {
    if (!v.warning.empty()) std::cerr << "warning: t=" << num(v.t) << ": " << v.warning << '\n';
    std::cout << num(v.t) << ',' << num(v.value.real()) << ',' << num(v.value.imag()) << ',' << num(std::abs(v.value))
              << ',' << num(v.abs_error) << '\n';
  }
  return kPass;
}

struct PushArgs {
  std::string f, measure = "cube:1", json;
  std::size_t bins = 512, count = 1'000'000;
  std::uint64_t seed = 0;
};

int run_pushforward(const PushArgs& a) {
  const auto mu = parse_measure_spec(a.measure);
  const auto f = phase_for(a.f, mu);
  PushforwardResult pf;
  std::vector<std::optional<double>> exact;
  if (one_dimensional(mu)) {
    const auto g = as_univariate(f);
    pf = pushforward_exact_1d(mu.factors()[0], g, a.bins);
    std::vector<double> centers;
    for (std::size_t j = 0; j < a.bins; ++j) centers.push_back(pf.grid_density.left + pf.grid_density.h * (j + 0.5));
    exact = pushforward_density_1d(mu.factors()[0], g, centers);
  } else {
    pf = pushforward_mc(mu, f, a.count, a.bins, a.seed);
  }
  const auto& grid = pf.grid_density;
  std::cout << "s,density,stderr\n";
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double s = grid.left + grid.h * (static_cast<double>(j) + 0.5);
    std::cout << num(s) << ',';
    if (!exact.empty())
      std::cout << (exact[j] ? num(*exact[j]) : std::string("undefined")) << ",0\n";
    else
      std::cout << num(grid.weights[j] / grid.h) << ',' << num(pf.cell_stderr[j] / grid.h) << '\n';
  }
  if (!a.json.empty()) {
    nlohmann::json j;
    j["method"] = pf.method;
    j["measure"] = measure_to_json(mu);
    j["f"] = to_string(f);
    j["bins"] = grid.size();
    if (pf.method != "exact1d") {
      j["mc_count"] = pf.mc_count;
      j["seed"] = pf.seed;
      j["clipped"] = pf.clipped;
    }
    auto table = nlohmann::json::array();
    for (std::size_t k = 0; k <= grid.size(); ++k) {
      const double s = grid.left + grid.h * static_cast<double>(k);
      table.push_back({s, pf.cdf(s)});
    }
    j["cdf"] = table;
    std::ofstream(a.json) << j.dump(2) << '\n';
  }
  return kPass;
}

int run_modulus(const std::string& density, const std::vector<double>& eps) {
  const auto rho = density_from_json(nlohmann::json(density));
  for (double e : eps)
    if (!(e > 0.0)) throw ConfigError("modulus: eps values must be positive");
  const auto om = omega_curve(rho, eps);
  std::cout << "eps,omega,sigma\n";
  for (std::size_t i = 0; i < eps.size(); ++i) std::cout << num(eps[i]) << ',' << num(om[i]) << ',' << num(sigma(rho, eps[i])) << '\n';
  return kPass;
}

struct SubArgs {
  std::string f, measure = "cube:1";
  std::vector<double> eps{1e-4, 1e-3, 1e-2, 1e-1};
  std::size_t count = 1'000'000;
  std::uint64_t seed = 0;
};

/// 1-D: exact measure against 8 e k ||rho||_inf (eps / |f^(k)|)^{1/k}, k = deg f.
/// Higher dimensions: MC measure; no explicit bound.
int run_sublevel(const SubArgs& a) {
  const auto mu = parse_measure_spec(a.measure);
  const auto f = phase_for(a.f, mu);
  for (double e : a.eps)
    if (!(e > 0.0)) throw ConfigError("sublevel: eps values must be positive");
  bool all = true;
  std::cout << "eps,measure,bound,pass\n";
  if (one_dimensional(mu)) {
    const auto g = as_univariate(f);
    const int k = g.degree();
    if (k < 1) throw ConfigError("sublevel: f must be non-constant");
    const double top = std::tgamma(k + 1.0) * std::abs(g.coefficient(k));
    const auto& rho = mu.factors()[0];
    for (double e : a.eps) {
      const double m = sublevel_measure(rho, g, e), b = sublevel_bound(k, rho.sup_norm(), e / top);
      all = all && m <= b;
      std::cout << num(e) << ',' << num(m) << ',' << num(b) << ',' << (m <= b ? "true" : "false") << '\n';
    }
  } else {
    for (std::size_t i = 0; i < a.eps.size(); ++i) {
      const auto est = sublevel_measure(mu, f, a.eps[i], a.count, a.seed);
      std::cout << num(a.eps[i]) << ',' << num(est.value) << ",nan,na\n";
    }
  }
  return all ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corput-lab: sub-level and oscillatory integral experiments"};
  app.require_subcommand(1);

  std::string config, out = "reports";
  auto* verify = app.add_subcommand("verify", "run an experiment suite and write its report");
  verify->add_option("--config", config, "experiment config (JSON)")->required();
  verify->add_option("--out", out, "report directory");

  OscArgs osc;
  auto* oscint = app.add_subcommand("oscint", "oscillatory integrals over a log-spaced t grid (CSV)");
  oscint->add_option("--f", osc.f, "polynomial phase, e.g. 'x1^2 + x2'")->required();
  oscint->add_option("--measure", osc.measure, "cube:n, ball:n, simplex:n, a density literal, or measure JSON");
  oscint->add_option("--t-min", osc.t_min);
  oscint->add_option("--t-max", osc.t_max);
  oscint->add_option("--points", osc.points);
  oscint->add_option("--method", osc.method, "auto, exact, tensor or mc");
  oscint->add_option("--mc-count", osc.count);
  oscint->add_option("--seed", osc.seed);

  PushArgs push;
  auto* pushforward = app.add_subcommand("pushforward", "density of the image measure (CSV)");
  pushforward->add_option("--f", push.f)->required();
  pushforward->add_option("--measure", push.measure);
  pushforward->add_option("--bins", push.bins);
  pushforward->add_option("--mc-count", push.count);
  pushforward->add_option("--seed", push.seed);
  pushforward->add_option("--json", push.json, "also write the CDF table and metadata here");

  std::string density;
  std::vector<double> mod_eps{1e-3, 1e-2, 1e-1};
  auto* modulus = app.add_subcommand("modulus", "omega and sigma of a 1-D density (CSV)");
  modulus->add_option("--density", density, "density literal, e.g. 'piecewise [0, 1] [1]'")->required();
  modulus->add_option("--eps", mod_eps)->delimiter(',');

  SubArgs sub;
  auto* sublevel = app.add_subcommand("sublevel", "sub-level set measures (CSV)");
  sublevel->add_option("--f", sub.f)->required();
  sublevel->add_option("--measure", sub.measure);
  sublevel->add_option("--eps", sub.eps)->delimiter(',');
  sublevel->add_option("--mc-count", sub.count);
  sublevel->add_option("--seed", sub.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }

  try {
    if (*verify) return run_verify(config, out);
    if (*oscint) return run_oscint(osc);
    if (*pushforward) return run_pushforward(push);
    if (*modulus) return run_modulus(density, mod_eps);
    if (*sublevel) return run_sublevel(sub);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kConfig;
}

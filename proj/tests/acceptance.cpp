// Runs the twelve acceptance criteria from the configs/ directory and prints
// one line per criterion. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "corput/harness.hpp"

#ifndef CORPUT_CONFIG_DIR
#error "CORPUT_CONFIG_DIR must point at the configs directory"
#endif

using namespace corput;

namespace {

struct Criterion {
  int id;
  const char* suite;
  const char* title;
  double limit_s;
};

const std::vector<Criterion> kCriteria{
    {1, "t_equiv", "sandwich 0.5 omega <= sigma <= 6 omega", 60},
    {2, "t_meas", "nu(A) <= sigma(nu, |A|) + 1e-3", 30},
    {3, "sublevel_8ek", "explicit 8ek sub-level constant", 60},
    {4, "quantile_4e", "explicit 4e separation bound", 30},
    {5, "divided_diff", "divided-difference identity to 1e-8", 5},
    {6, "krug", "Krug total-variation formula", 60},
    {7, "mixture", "mixture decomposition to 1e-12", 10},
    {8, "vdc_1d", "1-D oscillatory decay t^(-1/k)", 120},
    {9, "main_reg", "sigma exponent and dimension stability", 900},
    {10, "cw_main", "normalized oscillatory decay, stable across n", 900},
    {11, "ind_deg", "logarithmic regime for x1...xd", 300},
    {12, "tv_k", "TV vs Kantorovich exponent relation", 120},
};

std::string summary(const InequalityReport& r) {
  std::string out;
  for (const auto& [name, value] : r.constants) {
    if (name.rfind("stability_ratio", 0) == 0 || name.rfind("max_", 0) == 0 || name.rfind("r_squared", 0) == 0 ||
        name.rfind("slope", 0) == 0) {
      char buf[96];
      std::snprintf(buf, sizeof buf, " %s=%.4g", name.c_str(), value);
      out += buf;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = CORPUT_CONFIG_DIR;
  std::string out = "acceptance_reports";
  int only = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::strcmp(argv[i], "--only") == 0) only = std::atoi(argv[i + 1]);
    if (std::strcmp(argv[i], "--out") == 0) out = argv[i + 1];
  }
  int failed = 0;
  for (const auto& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string note;
    try {
      const auto report = run_suite(load_config(dir + "/" + c.suite + ".json"));
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_report(report, out);
      pass = report.verdict() && secs < c.limit_s;
      char buf[128];
      std::snprintf(buf, sizeof buf, " [%zu/%zu cases, %.1f s of %.0f s]", report.cases.size() - report.failures(),
                    report.cases.size(), secs, c.limit_s);
      note = buf + summary(report);
    } catch (const std::exception& e) {
      note = std::string(" error: ") + e.what();
    }
    if (!pass) ++failed;
    std::printf("%s %2d %-13s %s%s\n", pass ? "PASS" : "FAIL", c.id, c.suite, c.title, note.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

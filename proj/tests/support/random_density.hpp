#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "corput/density1d.hpp"

namespace corput::testing {

/// Random normalized step density with 1..max_pieces pieces on a subset of [0, 1].
inline PiecewiseDensity1D random_step_density(std::mt19937_64& rng, int max_pieces = 8) {
  std::uniform_int_distribution<int> count(1, max_pieces);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int m = count(rng);
  std::vector<double> b(static_cast<std::size_t>(m) + 1);
  for (auto& x : b) x = u(rng);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  if (b.size() < 2 || b.back() - b.front() < 0.05) return PiecewiseDensity1D::uniform(0.0, 1.0);
  for (std::size_t i = 1; i < b.size(); ++i) b[i] = std::max(b[i], b[i - 1] + 1e-3);
  std::vector<double> v(b.size() - 1);
  for (auto& x : v) x = u(rng) < 0.15 ? 0.0 : u(rng);
  if (*std::max_element(v.begin(), v.end()) == 0.0) v[0] = 1.0;
  return PiecewiseDensity1D::step(std::move(b), v).normalized();
}

}  // namespace corput::testing

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "torsionlab.hpp"

namespace torsionlab::testing {

/// Interior points kept 0.1 away from the poles, matching the default grid clip.
inline std::vector<ChartPoint> random_points(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> th(0.1, kPi - 0.1), ang(0.0, kTwoPi);
  std::vector<ChartPoint> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(th(rng), ang(rng), ang(rng), ang(rng));
  return out;
}

inline std::vector<Params> random_params(std::size_t n, unsigned seed, double box = 2.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-box, box);
  std::vector<Params> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = u(rng);
    out.push_back({a, u(rng)});
  }
  return out;
}

/// Reference values of cot at the points used by frozen expectations.
inline constexpr double kCot1 = 0.6420926159343306;
inline constexpr double kCotPi3 = 0.577350269189626;

}  // namespace torsionlab::testing

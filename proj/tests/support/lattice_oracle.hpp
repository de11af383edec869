#pragma once

// Brute-force lattice scans over a full cube. Deliberately naive: no pruning,
// no shared code with the library enumerators.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace genloc::testing {

using Vec = std::vector<std::int64_t>;

inline void cube_scan(int dim, std::int64_t half_width, const std::function<void(const Vec&)>& fn) {
  Vec x(static_cast<std::size_t>(dim), -half_width);
  while (true) {
    fn(x);
    int axis = dim - 1;
    while (axis >= 0 && x[static_cast<std::size_t>(axis)] == half_width) {
      x[static_cast<std::size_t>(axis)] = -half_width;
      --axis;
    }
    if (axis < 0) return;
    ++x[static_cast<std::size_t>(axis)];
  }
}

inline std::int64_t sq(const Vec& x) {
  std::int64_t s = 0;
  for (auto c : x) s += c * c;
  return s;
}

inline std::vector<Vec> oracle_ball(double lambda, int dim) {
  std::vector<Vec> out;
  const auto w = static_cast<std::int64_t>(std::sqrt(lambda)) + 1;
  cube_scan(dim, w, [&](const Vec& x) {
    if (static_cast<double>(sq(x)) < lambda) out.push_back(x);
  });
  return out;
}

inline std::vector<Vec> oracle_shell(std::int64_t j, int dim) {
  std::vector<Vec> out;
  const auto w = static_cast<std::int64_t>(std::sqrt(static_cast<double>(j))) + 1;
  cube_scan(dim, w, [&](const Vec& x) {
    if (sq(x) == j) out.push_back(x);
  });
  return out;
}

}  // namespace genloc::testing

#pragma once

// Naive trigonometric sums evaluated point by point with std::exp. No FFT,
// no shell ordering, no shared code with the synthesis routines.

#include <complex>
#include <functional>
#include <vector>

#include "genloc/series.hpp"
#include "lattice_oracle.hpp"

namespace genloc::testing {

using cplx = std::complex<double>;

/// sum over keep(n) of f_n exp(i n.x)
inline cplx naive_sum(const series::SpectralField& f, const std::vector<double>& x,
                      const std::function<bool(const Vec&)>& keep) {
  cplx s = 0.0;
  cube_scan(f.dimension(), f.n_max(), [&](const Vec& n) {
    if (keep && !keep(n)) return;
    double phase = 0.0;
    for (std::size_t a = 0; a < n.size(); ++a) phase += static_cast<double>(n[a]) * x[a];
    s += f.at(std::span<const std::int64_t>(n)) * std::exp(cplx(0.0, phase));
  });
  return s;
}

/// x_k = 2 pi k / M - pi, row-major flat index.
inline std::vector<double> grid_point(int dim, int m, std::size_t flat) {
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (int a = dim - 1; a >= 0; --a) {
    const auto k = static_cast<double>(flat % static_cast<std::size_t>(m));
    x[static_cast<std::size_t>(a)] = 2.0 * 3.14159265358979323846 * k / m - 3.14159265358979323846;
    flat /= static_cast<std::size_t>(m);
  }
  return x;
}

}  // namespace genloc::testing

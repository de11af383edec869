#include <cmath>
#include <numbers>
#include <string>

#include "genloc/errors.hpp"
#include "genloc/kernel.hpp"
#include "genloc/parallel.hpp"

namespace genloc::kernel {

namespace {

Coord isqrt_ceil(Coord v) {
  auto r = static_cast<Coord>(std::sqrt(static_cast<double>(v)));
  while (r * r < v) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= v) --r;
  return r;
}

}  // namespace

KernelCoeffs KernelCoeffs::build(const PeriodizedWindow& window, Coord max_j, Coord n_max,
                                 int threads) {
  if (max_j < 0) throw ParameterError("kernel table needs J >= 0");
  if (n_max < 0) throw ParameterError("kernel table needs n_max >= 0");
  const int dim = window.dimension();
  const Coord h = window.half_width();
  if (!window.spec().identity && n_max + isqrt_ceil(max_j) > h)
    throw RangeError("kernel table overflow: n_max + sqrt(J) = " +
                     std::to_string(n_max + isqrt_ceil(max_j)) + " exceeds psi table half-width " +
                     std::to_string(h));

  KernelCoeffs kc;
  kc.dim_ = dim;
  kc.max_j_ = max_j;
  kc.n_max_ = n_max;
  kc.spec_ = window.spec();
  kc.grid_ = window.grid();
  kc.points_ = lattice::enumerate_ball(static_cast<double>(n_max * n_max) + 0.5, dim);

  const Coord cube = 2 * n_max + 1;
  std::size_t cube_size = 1;
  for (int a = 0; a < dim; ++a) cube_size *= static_cast<std::size_t>(cube);
  kc.index_.assign(cube_size, -1);
  for (std::size_t row = 0; row < kc.points_.size(); ++row) {
    Coord idx = 0;
    for (Coord c : kc.points_[row].coords()) idx = idx * cube + (c + n_max);
    kc.index_[static_cast<std::size_t>(idx)] = static_cast<std::int64_t>(row);
  }

  const lattice::ShellTable shells(dim, max_j);
  const Coord side = 2 * h + 1;
  // Linear psi-table offsets of every shell point, so psi_{n-m} is
  // table[base(n) - offset(m)].
  std::vector<std::int64_t> offsets(shells.total_points());
  std::vector<std::size_t> shell_start(static_cast<std::size_t>(max_j) + 2, 0);
  {
    std::size_t cursor = 0;
    for (Coord j = 0; j <= max_j; ++j) {
      shell_start[static_cast<std::size_t>(j)] = cursor;
      const auto flat = shells.shell_coords(j);
      for (std::size_t i = 0; i < flat.size(); i += static_cast<std::size_t>(dim)) {
        std::int64_t off = 0;
        for (int a = 0; a < dim; ++a) off = off * side + flat[i + static_cast<std::size_t>(a)];
        offsets[cursor++] = off;
      }
    }
    shell_start[static_cast<std::size_t>(max_j) + 1] = cursor;
  }

  const auto jt = static_cast<std::size_t>(max_j) + 2;
  const auto jb = static_cast<std::size_t>(max_j) + 1;
  kc.theta_.assign(kc.points_.size() * jt, cplx{});
  kc.big_theta_.assign(kc.points_.size() * jb, cplx{});
  const double norm = std::pow(2.0 * std::numbers::pi, -dim);
  const auto table = window.table();
  const bool identity = window.spec().identity;

  parallel_for(kc.points_.size(), threads, [&](std::size_t row) {
    const auto& n = kc.points_[row];
    std::int64_t base = 0;
    for (Coord c : n.coords()) base = base * side + (c + h);
    cplx* theta = kc.theta_.data() + row * jt;
    cplx* big = kc.big_theta_.data() + row * jb;
    for (std::size_t j = 0; j < jb; ++j) {
      double s = 0.0;
      if (identity) {
        // psi_m = delta_m: only m = n contributes.
        if (n.norm_sq() == static_cast<Coord>(j)) s = 1.0;
      } else {
        for (std::size_t i = shell_start[j]; i < shell_start[j + 1]; ++i)
          s += table[static_cast<std::size_t>(base - offsets[i])];
      }
      big[j] = norm * s;
      theta[j + 1] = theta[j] + big[j];
    }
  });
  kc.truncation_bound_ = norm * window.truncation_bound();
  return kc;
}

std::optional<std::size_t> KernelCoeffs::row_of(std::span<const Coord> n) const {
  if (static_cast<int>(n.size()) != dim_) throw DimensionError("kernel index dimension");
  const Coord cube = 2 * n_max_ + 1;
  Coord idx = 0;
  for (Coord c : n) {
    if (c < -n_max_ || c > n_max_) return std::nullopt;
    idx = idx * cube + (c + n_max_);
  }
  const auto row = index_[static_cast<std::size_t>(idx)];
  if (row < 0) return std::nullopt;
  return static_cast<std::size_t>(row);
}

std::span<const cplx> KernelCoeffs::theta_row(std::size_t row) const {
  const auto jt = static_cast<std::size_t>(max_j_) + 2;
  return {theta_.data() + row * jt, jt};
}

std::span<const cplx> KernelCoeffs::big_theta_row(std::size_t row) const {
  const auto jb = static_cast<std::size_t>(max_j_) + 1;
  return {big_theta_.data() + row * jb, jb};
}

cplx theta_coeff(const KernelCoeffs& kc, Coord j, const LatticePoint& n) {
  if (j < 0 || j > kc.max_j() + 1) throw RangeError("theta index j outside the table");
  const auto row = kc.row_of(n.coords());
  if (!row) throw RangeError("theta index n outside the table");
  return kc.theta_row(*row)[static_cast<std::size_t>(j)];
}

cplx big_theta_coeff(const KernelCoeffs& kc, Coord j, const LatticePoint& n) {
  if (j < 0 || j > kc.max_j()) throw RangeError("Theta index j outside the table");
  const auto row = kc.row_of(n.coords());
  if (!row) throw RangeError("Theta index n outside the table");
  return kc.big_theta_row(*row)[static_cast<std::size_t>(j)];
}

cplx dirichlet_kernel(std::span<const double> x, double lambda) {
  const int dim = static_cast<int>(x.size());
  const auto ball = lattice::enumerate_ball(lambda, dim);
  cplx s{};
  for (const auto& n : ball) {
    double phase = 0.0;
    for (int a = 0; a < dim; ++a) phase += static_cast<double>(n[static_cast<std::size_t>(a)]) * x[static_cast<std::size_t>(a)];
    s += cplx(std::cos(phase), std::sin(phase));
  }
  return s * std::pow(2.0 * std::numbers::pi, -dim);
}

}  // namespace genloc::kernel

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "genloc/errors.hpp"
#include "genloc/kernel.hpp"
#include "genloc/special.hpp"

namespace genloc::kernel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

double reduce_to_cell(double x) {
  // Into (-pi, pi].
  double y = x - kTwoPi * std::round(x / kTwoPi);
  if (y <= -std::numbers::pi) y += kTwoPi;
  return y;
}

}  // namespace

void WindowSpec::validate() const {
  if (dim < 1) throw ParameterError("window dimension must be >= 1");
  if (identity) return;
  if (!(r > 0.0 && r < R && R <= 1.0))
    throw ParameterError("window radii must satisfy 0 < r < R <= 1 (got R=" + std::to_string(R) +
                         ", r=" + std::to_string(r) + ")");
}

WindowSpec WindowSpec::unit(int dim) {
  WindowSpec s;
  s.dim = dim;
  s.identity = true;
  return s;
}

double phi1(const WindowSpec& spec, double radius) { return 1.0 - phi2(spec, radius); }

double phi2(const WindowSpec& spec, double radius) {
  if (spec.identity) return 1.0;
  return smooth_step(radius, spec.t1(), spec.t2());
}

double window_value(const WindowSpec& spec, std::span<const double> x) {
  if (spec.identity) return 1.0;
  double s = 0.0;
  for (double xi : x) {
    const double y = reduce_to_cell(xi);
    s += y * y;
  }
  return phi2(spec, std::sqrt(s));
}

bool PeriodizedWindow::in_table(std::span<const Coord> m) const {
  if (static_cast<int>(m.size()) != spec_.dim) throw DimensionError("window index dimension");
  const Coord h = half_width();
  for (Coord c : m)
    if (c < -h || c > h) return false;
  return true;
}

double PeriodizedWindow::coeff(std::span<const Coord> m) const {
  if (!in_table(m)) return 0.0;
  const Coord h = half_width();
  const Coord side = 2 * h + 1;
  Coord idx = 0;
  for (Coord c : m) idx = idx * side + (c + h);
  return table_[static_cast<std::size_t>(idx)];
}

double PeriodizedWindow::decay_constant(int q, Coord limit) const {
  const Coord h = half_width();
  const Coord side = 2 * h + 1;
  const auto dim = static_cast<std::size_t>(spec_.dim);
  std::vector<Coord> m(dim, 0);
  double best = 0.0;
  for (std::size_t idx = 0; idx < table_.size(); ++idx) {
    std::size_t rest = idx;
    bool inside = true;
    double norm_sq = 0.0;
    for (std::size_t a = dim; a-- > 0;) {
      m[a] = static_cast<Coord>(rest % static_cast<std::size_t>(side)) - h;
      rest /= static_cast<std::size_t>(side);
      if (m[a] < -limit || m[a] > limit) inside = false;
      norm_sq += static_cast<double>(m[a] * m[a]);
    }
    if (!inside) continue;
    best = std::max(best, std::abs(table_[idx]) * std::pow(1.0 + std::sqrt(norm_sq), q));
  }
  return best;
}

double PeriodizedWindow::truncation_bound() const {
  if (spec_.identity) return 0.0;
  const int n = spec_.dim;
  if (n >= 6) return std::numeric_limits<double>::infinity();
  // c_6 * |S^{N-1}| * int_{M/2}^inf rho^{N-1-6} d rho
  const double surface = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
  const double h = static_cast<double>(half_width());
  return decay_constant(6) * surface * std::pow(h, n - 6) / (6.0 - n);
}

PeriodizedWindow build_window(const WindowSpec& spec, int grid) {
  spec.validate();
  if (!is_power_of_two(grid) || grid < 64)
    throw ParameterError("window grid must be a power of two >= 64 (got " + std::to_string(grid) +
                         ")");
  if (!spec.identity && spec.t2() - spec.t1() < kTwoPi / grid)
    throw ResolutionError("window transition narrower than one grid cell; increase M");

  PeriodizedWindow w;
  w.spec_ = spec;
  w.grid_ = grid;
  const int dim = spec.dim;
  const auto m = static_cast<std::size_t>(grid);
  const Coord h = grid / 2;
  const auto side = static_cast<std::size_t>(2 * h + 1);
  std::size_t table_size = 1;
  std::size_t grid_size = 1;
  for (int a = 0; a < dim; ++a) {
    table_size *= side;
    grid_size *= m;
  }
  if (static_cast<double>(grid_size) > 4.0e8) throw ResourceError("window grid too large");
  w.table_.assign(table_size, 0.0);

  if (spec.identity) {
    std::size_t center = 0;
    for (int a = 0; a < dim; ++a) center = center * side + static_cast<std::size_t>(h);
    w.table_[center] = 1.0;
    return w;
  }

  std::vector<std::complex<double>> data(grid_size);
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (std::size_t idx = 0; idx < grid_size; ++idx) {
    std::size_t rest = idx;
    for (int a = dim; a-- > 0;) {
      x[static_cast<std::size_t>(a)] = kTwoPi * static_cast<double>(rest % m) / grid - std::numbers::pi;
      rest /= m;
    }
    data[idx] = window_value(spec, x);
  }
  detail::fft_cube(data, dim, grid, detail::FftDirection::forward);

  const double scale = 1.0 / static_cast<double>(grid_size);
  for (std::size_t idx = 0; idx < table_size; ++idx) {
    std::size_t rest = idx;
    std::size_t bin = 0;
    std::size_t stride = 1;
    Coord parity = 0;
    int nyquist = 0;
    for (int a = dim; a-- > 0;) {
      const Coord c = static_cast<Coord>(rest % side) - h;
      rest /= side;
      parity += c;
      if (c == h || c == -h) ++nyquist;
      bin += static_cast<std::size_t>(((c % grid) + grid) % grid) * stride;
      stride *= m;
    }
    // x_k = 2 pi k / M - pi contributes the phase e^{i m pi} = (-1)^{sum m};
    // the Nyquist bin is shared between +M/2 and -M/2 and split evenly.
    std::complex<double> v = data[bin] * scale * (parity % 2 == 0 ? 1.0 : -1.0);
    v /= static_cast<double>(1 << nyquist);
    w.table_[idx] = v.real();
    w.max_imag_ = std::max(w.max_imag_, std::abs(v.imag()));
  }
  return w;
}

}  // namespace genloc::kernel

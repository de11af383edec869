#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "genloc/errors.hpp"
#include "genloc/series.hpp"

namespace genloc::series {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

}  // namespace

TorusGrid::TorusGrid(int dim, int m) : dim_(dim), m_(m) {
  if (dim < 1) throw ParameterError("grid dimension must be >= 1");
  if (m < 2 || !is_power_of_two(m)) throw ParameterError("grid side must be a power of two >= 2");
  double total = 1.0;
  for (int i = 0; i < dim; ++i) total *= m;
  if (total > 4e8) throw ResourceError("torus grid exceeds 4e8 points");
  size_ = static_cast<std::size_t>(total);
}

double TorusGrid::coord(int k) const { return kTwoPi * k / m_ - std::numbers::pi; }

void TorusGrid::point(std::size_t flat, std::span<double> out) const {
  for (int a = dim_ - 1; a >= 0; --a) {
    out[static_cast<std::size_t>(a)] = coord(static_cast<int>(flat % static_cast<std::size_t>(m_)));
    flat /= static_cast<std::size_t>(m_);
  }
}

double TorusGrid::norm_sq(std::size_t flat) const {
  double s = 0.0;
  for (int a = 0; a < dim_; ++a) {
    const double x = coord(static_cast<int>(flat % static_cast<std::size_t>(m_)));
    s += x * x;
    flat /= static_cast<std::size_t>(m_);
  }
  return s;
}

double TorusGrid::cell_volume() const { return std::pow(kTwoPi / m_, dim_); }

SpectralField::SpectralField(int dim, Coord n_max) : dim_(dim), n_max_(n_max) {
  if (dim < 1) throw ParameterError("field dimension must be >= 1");
  if (n_max < 0) throw ParameterError("band limit must be >= 0");
  double total = 1.0;
  for (int i = 0; i < dim; ++i) total *= static_cast<double>(2 * n_max + 1);
  if (total > 2e8) throw ResourceError("coefficient cube exceeds 2e8 entries");
  coeffs_.assign(static_cast<std::size_t>(total), cplx{});
}

SpectralField SpectralField::delta(int dim, Coord n_max, const LatticePoint& n, cplx value) {
  if (n.dimension() != dim) throw DimensionError("delta position dimension");
  SpectralField f(dim, n_max);
  f.set(n, value);
  return f;
}

SpectralField SpectralField::random(int dim, Coord n_max, std::mt19937_64& rng, bool real_valued) {
  SpectralField f(dim, n_max);
  std::normal_distribution<double> g(0.0, std::numbers::sqrt2 / 2.0);
  for (auto& c : f.coeffs_) c = cplx(g(rng), g(rng));
  if (real_valued) {
    // The cube is centrally symmetric: flat index i and size-1-i are n and -n.
    const std::size_t s = f.coeffs_.size();
    for (std::size_t i = 0; i <= s / 2; ++i) {
      const cplx v = 0.5 * (f.coeffs_[i] + std::conj(f.coeffs_[s - 1 - i]));
      f.coeffs_[i] = v;
      f.coeffs_[s - 1 - i] = std::conj(v);
    }
    f.real_ = true;
  }
  return f;
}

bool SpectralField::contains(std::span<const Coord> n) const {
  if (static_cast<int>(n.size()) != dim_) return false;
  return std::all_of(n.begin(), n.end(), [&](Coord c) { return c >= -n_max_ && c <= n_max_; });
}

std::size_t SpectralField::index_of(std::span<const Coord> n) const {
  if (static_cast<int>(n.size()) != dim_) throw DimensionError("coefficient index dimension");
  if (!contains(n)) throw RangeError("coefficient index outside the band");
  std::size_t idx = 0;
  for (Coord c : n) idx = idx * static_cast<std::size_t>(side()) + static_cast<std::size_t>(c + n_max_);
  return idx;
}

void SpectralField::point_of(std::size_t flat, std::span<Coord> out) const {
  const auto s = static_cast<std::size_t>(side());
  for (int a = dim_ - 1; a >= 0; --a) {
    out[static_cast<std::size_t>(a)] = static_cast<Coord>(flat % s) - n_max_;
    flat /= s;
  }
}

Coord SpectralField::norm_sq_of(std::size_t flat) const {
  const auto s = static_cast<std::size_t>(side());
  Coord total = 0;
  for (int a = 0; a < dim_; ++a) {
    const Coord c = static_cast<Coord>(flat % s) - n_max_;
    total += c * c;
    flat /= s;
  }
  return total;
}

cplx SpectralField::at(std::span<const Coord> n) const {
  if (!contains(n)) return {};
  return coeffs_[index_of(n)];
}

void SpectralField::set(std::span<const Coord> n, cplx value) {
  coeffs_[index_of(n)] = value;
  real_ = false;
}

double SpectralField::conjugate_asymmetry() const {
  const std::size_t s = coeffs_.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < s; ++i)
    worst = std::max(worst, std::abs(coeffs_[i] - std::conj(coeffs_[s - 1 - i])));
  return worst;
}

void SpectralField::mark_real(double tol) {
  const double asym = conjugate_asymmetry();
  if (asym > tol)
    throw PreconditionError("field is not conjugate symmetric (asymmetry " + std::to_string(asym) + ")");
  real_ = true;
}

double SpectralField::l2_norm_sq() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::pow(kTwoPi, dim_) * s;
}

double GridField::l2_norm_sq() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return s * grid.cell_volume();
}

double GridField::l2_norm_sq_ball(double radius, bool closed) const {
  const double r2 = radius * radius;
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = grid.norm_sq(i);
    if (d < r2 || (closed && d == r2)) s += std::norm(values[i]);
  }
  return s * grid.cell_volume();
}

double GridField::max_abs_ball(double radius) const {
  const double r2 = radius * radius;
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (grid.norm_sq(i) <= r2) worst = std::max(worst, std::abs(values[i]));
  return worst;
}

GridField synthesize_masked(const SpectralField& f, const TorusGrid& grid,
                            const std::function<bool(std::span<const Coord>)>& keep) {
  if (grid.dimension() != f.dimension()) throw DimensionError("grid and field dimensions differ");
  const int m = grid.side();
  if (m < 2 * f.n_max() + 2)
    throw ConfigError("grid side " + std::to_string(m) + " too small for band limit " +
                      std::to_string(f.n_max()) + " (need M >= 2 n_max + 2)");
  GridField out(grid);
  std::vector<Coord> n(static_cast<std::size_t>(f.dimension()));
  const auto coeffs = f.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == cplx{}) continue;
    f.point_of(i, n);
    if (keep && !keep(n)) continue;
    std::size_t idx = 0;
    Coord parity = 0;
    for (Coord c : n) {
      idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>((c + m) % m);
      parity += c;
    }
    out.values[idx] = (parity % 2 == 0) ? coeffs[i] : -coeffs[i];
  }
  detail::fft_cube(out.values, grid.dimension(), m, detail::FftDirection::backward);
  return out;
}

GridField synthesize(const SpectralField& f, const TorusGrid& grid) {
  return synthesize_masked(f, grid, nullptr);
}

SpectralField analyze(const GridField& samples, Coord n_max) {
  const auto& grid = samples.grid;
  const int m = grid.side();
  if (n_max < 0 || n_max > m / 2 - 1)
    throw ConfigError("band limit " + std::to_string(n_max) + " aliases on a grid of side " +
                      std::to_string(m) + " (need n_max <= M/2 - 1)");
  std::vector<cplx> work = samples.values;
  detail::fft_cube(work, grid.dimension(), m, detail::FftDirection::forward);
  SpectralField f(grid.dimension(), n_max);
  const double norm = 1.0 / static_cast<double>(grid.size());
  std::vector<Coord> n(static_cast<std::size_t>(grid.dimension()));
  auto coeffs = f.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    f.point_of(i, n);
    std::size_t idx = 0;
    Coord parity = 0;
    for (Coord c : n) {
      idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>((c + m) % m);
      parity += c;
    }
    coeffs[i] = ((parity % 2 == 0) ? norm : -norm) * work[idx];
  }
  return f;
}

}  // namespace genloc::series

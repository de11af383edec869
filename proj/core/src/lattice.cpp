#include "genloc/lattice.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "genloc/errors.hpp"

namespace genloc::lattice {

namespace {

// Ball enumeration refuses to materialize more than this many points.
constexpr double kMaxBallPoints = 6.0e7;

void check_dim(int dim) {
  if (dim < 1) throw ParameterError("lattice dimension must be >= 1");
}

Coord isqrt(Coord v) {
  if (v <= 0) return 0;
  auto r = static_cast<Coord>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

double ball_volume_estimate(int dim, Coord max_sq) {
  // Loose upper bound: the cube [-r, r]^N.
  const double side = 2.0 * static_cast<double>(isqrt(max_sq)) + 1.0;
  return std::pow(side, dim);
}

// Depth-first lexicographic scan of { x : |x|^2 <= max_sq } (or == exact when
// exact >= 0). Calls emit(coords) for every hit.
template <class Emit>
void scan(int dim, Coord max_sq, Coord exact, Emit&& emit) {
  std::vector<Coord> x(static_cast<std::size_t>(dim), 0);
  auto rec = [&](auto&& self, int axis, Coord budget) -> void {
    const Coord r = isqrt(budget);
    if (axis == dim - 1) {
      if (exact >= 0) {
        // The last coordinate is forced to +-sqrt(budget) when it is a square.
        if (r * r != budget) return;
        x[axis] = -r;
        emit(x);
        if (r != 0) {
          x[axis] = r;
          emit(x);
        }
        return;
      }
      for (Coord c = -r; c <= r; ++c) {
        x[axis] = c;
        emit(x);
      }
      return;
    }
    for (Coord c = -r; c <= r; ++c) {
      x[axis] = c;
      self(self, axis + 1, budget - c * c);
    }
  };
  rec(rec, 0, exact >= 0 ? exact : max_sq);
}

}  // namespace

LatticePoint::LatticePoint(std::vector<Coord> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw ParameterError("lattice point needs at least one coordinate");
}

LatticePoint::LatticePoint(std::initializer_list<Coord> coords)
    : LatticePoint(std::vector<Coord>(coords)) {}

LatticePoint LatticePoint::zero(int dim) {
  check_dim(dim);
  return LatticePoint(std::vector<Coord>(static_cast<std::size_t>(dim), 0));
}

Coord LatticePoint::norm_sq() const {
  Coord s = 0;
  for (Coord c : coords_) s += c * c;
  return s;
}

bool LatticePoint::is_zero() const {
  for (Coord c : coords_)
    if (c != 0) return false;
  return true;
}

LatticePoint operator+(const LatticePoint& a, const LatticePoint& b) {
  if (a.dimension() != b.dimension()) throw DimensionError("lattice point dimensions differ");
  std::vector<Coord> out(a.coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coords_[i] + b.coords_[i];
  return LatticePoint(std::move(out));
}

LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) {
  if (a.dimension() != b.dimension()) throw DimensionError("lattice point dimensions differ");
  std::vector<Coord> out(a.coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coords_[i] - b.coords_[i];
  return LatticePoint(std::move(out));
}

Coord dot(const LatticePoint& a, const LatticePoint& b) {
  if (a.dimension() != b.dimension()) throw DimensionError("lattice point dimensions differ");
  Coord s = 0;
  for (std::size_t i = 0; i < a.coords().size(); ++i) s += a[i] * b[i];
  return s;
}

Coord distance_sq(const LatticePoint& a, const LatticePoint& b) { return (a - b).norm_sq(); }

std::vector<LatticePoint> enumerate_ball(double lambda, int dim) {
  check_dim(dim);
  if (!std::isfinite(lambda)) throw ParameterError("ball radius must be finite");
  if (lambda <= 0) throw ParameterError("ball parameter lambda must be positive");
  if (lambda > 1e15) throw ResourceError("ball parameter too large for 64-bit enumeration");
  // |n|^2 < lambda  <=>  |n|^2 <= ceil(lambda) - 1 for integer |n|^2.
  const auto max_sq = static_cast<Coord>(std::ceil(lambda)) - 1;
  if (ball_volume_estimate(dim, max_sq) > kMaxBallPoints)
    throw ResourceError("ball enumeration exceeds point budget");
  std::vector<LatticePoint> out;
  scan(dim, max_sq, -1, [&](const std::vector<Coord>& x) { out.emplace_back(x); });
  return out;
}

std::vector<LatticePoint> sphere_shell(Coord j, int dim) {
  check_dim(dim);
  if (j < 0) throw ParameterError("shell index must be nonnegative");
  std::vector<LatticePoint> out;
  scan(dim, j, j, [&](const std::vector<Coord>& x) { out.emplace_back(x); });
  return out;
}

std::size_t shell_count(Coord j, int dim) {
  check_dim(dim);
  if (j < 0) throw ParameterError("shell index must be nonnegative");
  std::size_t count = 0;
  scan(dim, j, j, [&](const std::vector<Coord>&) { ++count; });
  return count;
}

std::vector<LatticePoint> shifted_shell(const LatticePoint& n, Coord k, Coord p) {
  if (k < 0) throw ParameterError("ring radius k must be nonnegative");
  if (p < 0 || p > 2 * k)
    throw RangeError("shell offset p=" + std::to_string(p) + " outside [0, 2k]");
  auto shell = sphere_shell(k * k + p, n.dimension());
  for (auto& m : shell) m = m + n;
  return shell;
}

ShellTable::ShellTable(int dim, Coord max_norm_sq) : dim_(dim), max_norm_sq_(max_norm_sq) {
  check_dim(dim);
  if (max_norm_sq < 0) throw ParameterError("shell table bound must be nonnegative");
  if (max_norm_sq > std::numeric_limits<std::int32_t>::max())
    throw ResourceError("shell table bound too large");
  if (ball_volume_estimate(dim, max_norm_sq) > kMaxBallPoints)
    throw ResourceError("shell table exceeds point budget");

  // Two passes over the ball: count per shell, then scatter. The scan is
  // lexicographic, so a stable scatter keeps each shell in lex order.
  const auto shells = static_cast<std::size_t>(max_norm_sq) + 1;
  std::vector<std::size_t> counts(shells, 0);
  scan(dim, max_norm_sq, -1, [&](const std::vector<Coord>& x) {
    Coord s = 0;
    for (Coord c : x) s += c * c;
    ++counts[static_cast<std::size_t>(s)];
  });
  offsets_.assign(shells + 1, 0);
  for (std::size_t j = 0; j < shells; ++j) offsets_[j + 1] = offsets_[j] + counts[j];

  coords_.resize(offsets_.back() * static_cast<std::size_t>(dim));
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  scan(dim, max_norm_sq, -1, [&](const std::vector<Coord>& x) {
    Coord s = 0;
    for (Coord c : x) s += c * c;
    const std::size_t slot = cursor[static_cast<std::size_t>(s)]++;
    for (int i = 0; i < dim; ++i)
      coords_[slot * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i)] =
          static_cast<std::int32_t>(x[static_cast<std::size_t>(i)]);
  });
}

void ShellTable::check(Coord j) const {
  if (j < 0 || j > max_norm_sq_)
    throw RangeError("shell " + std::to_string(j) + " outside table bound " +
                     std::to_string(max_norm_sq_));
}

std::size_t ShellTable::shell_size(Coord j) const {
  check(j);
  const auto u = static_cast<std::size_t>(j);
  return offsets_[u + 1] - offsets_[u];
}

std::span<const std::int32_t> ShellTable::shell_coords(Coord j) const {
  check(j);
  const auto u = static_cast<std::size_t>(j);
  const auto d = static_cast<std::size_t>(dim_);
  return {coords_.data() + offsets_[u] * d, (offsets_[u + 1] - offsets_[u]) * d};
}

std::vector<LatticePoint> ShellTable::shell(Coord j) const {
  const auto flat = shell_coords(j);
  const auto d = static_cast<std::size_t>(dim_);
  std::vector<LatticePoint> out;
  out.reserve(flat.size() / d);
  for (std::size_t i = 0; i < flat.size(); i += d)
    out.emplace_back(std::vector<Coord>(flat.begin() + static_cast<std::ptrdiff_t>(i),
                                        flat.begin() + static_cast<std::ptrdiff_t>(i + d)));
  return out;
}

}  // namespace genloc::lattice

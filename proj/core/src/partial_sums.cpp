#include <algorithm>
#include <cmath>
#include <numbers>

#include "genloc/errors.hpp"
#include "genloc/series.hpp"

namespace genloc::series {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Per-point, per-axis table of e^{i c x_a} for |c| <= n_max.
class ProbeExponentials {
 public:
  ProbeExponentials(const std::vector<std::vector<double>>& points, int dim, Coord n_max)
      : dim_(dim), side_(static_cast<std::size_t>(2 * n_max + 1)), n_max_(n_max) {
    table_.resize(points.size() * static_cast<std::size_t>(dim) * side_);
    for (std::size_t p = 0; p < points.size(); ++p) {
      if (static_cast<int>(points[p].size()) != dim) throw DimensionError("probe point dimension");
      for (int a = 0; a < dim; ++a)
        for (Coord c = -n_max; c <= n_max; ++c)
          table_[(p * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)) * side_ +
                 static_cast<std::size_t>(c + n_max)] =
              std::polar(1.0, static_cast<double>(c) * points[p][static_cast<std::size_t>(a)]);
    }
  }

  cplx mode(std::size_t p, std::span<const Coord> n) const {
    cplx v = 1.0;
    for (int a = 0; a < dim_; ++a)
      v *= table_[(p * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(a)) * side_ +
                  static_cast<std::size_t>(n[static_cast<std::size_t>(a)] + n_max_)];
    return v;
  }

 private:
  int dim_;
  std::size_t side_;
  Coord n_max_;
  std::vector<cplx> table_;
};

// Nonzero coefficient indices ordered by |n|^2 (stable, so lexicographic
// within a shell).
std::vector<std::size_t> shell_order(const SpectralField& f) {
  std::vector<std::size_t> order;
  const auto coeffs = f.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != cplx{}) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return f.norm_sq_of(a) < f.norm_sq_of(b); });
  return order;
}

void check_grid(const SpectralField& f, const TorusGrid& grid) {
  if (grid.dimension() != f.dimension()) throw DimensionError("grid and field dimensions differ");
}

}  // namespace

GridField spherical_sum(const SpectralField& f, double lambda, const TorusGrid& grid) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be positive and finite");
  check_grid(f, grid);
  return synthesize_masked(f, grid, [lambda](std::span<const Coord> n) {
    Coord s = 0;
    for (Coord c : n) s += c * c;
    return static_cast<double>(s) < lambda;
  });
}

GridField square_sum(const SpectralField& f, Coord k, const TorusGrid& grid) {
  if (k < 0) throw ParameterError("square sum order must be >= 0");
  check_grid(f, grid);
  return synthesize_masked(f, grid, [k](std::span<const Coord> n) {
    return std::all_of(n.begin(), n.end(), [k](Coord c) { return std::abs(c) <= k; });
  });
}

GridField rectangular_sum(const SpectralField& f, std::span<const Coord> limits,
                          const TorusGrid& grid) {
  check_grid(f, grid);
  if (static_cast<int>(limits.size()) != f.dimension())
    throw DimensionError("rectangular sum needs one limit per axis");
  for (Coord l : limits)
    if (l < 0) throw ParameterError("rectangular sum limits must be >= 0");
  std::vector<Coord> lim(limits.begin(), limits.end());
  return synthesize_masked(f, grid, [lim](std::span<const Coord> n) {
    for (std::size_t a = 0; a < n.size(); ++a)
      if (std::abs(n[a]) > lim[a]) return false;
    return true;
  });
}

GridField generalized_square_sum(const SpectralField& f,
                                 const std::vector<std::function<Coord(Coord)>>& limits, Coord k,
                                 const TorusGrid& grid) {
  std::vector<Coord> lim;
  lim.reserve(limits.size());
  for (const auto& fn : limits) lim.push_back(fn(k));
  return rectangular_sum(f, lim, grid);
}

GridField elliptic_sum(const SpectralField& f, const HomogeneousPolynomial& a, double lambda,
                       const TorusGrid& grid) {
  if (a.dimension() != f.dimension()) throw DimensionError("polynomial and field dimensions differ");
  if (!std::isfinite(lambda)) throw ParameterError("lambda must be finite");
  ellipticity_screen(a);
  check_grid(f, grid);
  return synthesize_masked(f, grid, [&a, lambda](std::span<const Coord> n) {
    return a.at_lattice(n) < lambda;
  });
}

TevzadzeSplit tevzadze_split(const SpectralField& f, Coord k, const TorusGrid& grid) {
  if (f.dimension() != 2 || grid.dimension() != 2) throw DimensionError("Tevzadze split needs N = 2");
  if (k < 0) throw ParameterError("square sum order must be >= 0");
  const int m = grid.side();
  const Coord nm = f.n_max();
  const Coord kk = std::min(k, nm);
  const auto side = static_cast<std::size_t>(2 * nm + 1);
  // e^{i c x_t} for |c| <= n_max and grid index t.
  std::vector<cplx> ex(side * static_cast<std::size_t>(m));
  for (Coord c = -nm; c <= nm; ++c)
    for (int t = 0; t < m; ++t)
      ex[static_cast<std::size_t>(c + nm) * static_cast<std::size_t>(m) + static_cast<std::size_t>(t)] =
          std::polar(1.0, static_cast<double>(c) * grid.coord(t));
  auto e = [&](Coord c, int t) {
    return ex[static_cast<std::size_t>(c + nm) * static_cast<std::size_t>(m) + static_cast<std::size_t>(t)];
  };
  auto coef = [&](Coord n1, Coord n2) {
    const Coord idx[2] = {n1, n2};
    return f.at(std::span<const Coord>(idx, 2));
  };

  TevzadzeSplit out{GridField(grid), GridField(grid), GridField(grid)};
  std::vector<cplx> line(static_cast<std::size_t>(m));
  for (Coord n1 = -kk; n1 <= kk; ++n1) {
    // A_{n1}(x2)
    std::fill(line.begin(), line.end(), cplx{});
    for (Coord n2 = -std::abs(n1); n2 <= std::abs(n1); ++n2) {
      const cplx c = coef(n1, n2);
      if (c == cplx{}) continue;
      for (int t = 0; t < m; ++t) line[static_cast<std::size_t>(t)] += c * e(n2, t);
    }
    for (int t1 = 0; t1 < m; ++t1) {
      const cplx w = e(n1, t1);
      for (int t2 = 0; t2 < m; ++t2)
        out.first.values[static_cast<std::size_t>(t1) * static_cast<std::size_t>(m) + static_cast<std::size_t>(t2)] +=
            w * line[static_cast<std::size_t>(t2)];
    }
  }
  for (Coord n2 = -kk; n2 <= kk; ++n2) {
    // B_{n2}(x1), strict |n1| < |n2|
    std::fill(line.begin(), line.end(), cplx{});
    for (Coord n1 = -std::abs(n2) + 1; n1 <= std::abs(n2) - 1; ++n1) {
      const cplx c = coef(n1, n2);
      if (c == cplx{}) continue;
      for (int t = 0; t < m; ++t) line[static_cast<std::size_t>(t)] += c * e(n1, t);
    }
    for (int t1 = 0; t1 < m; ++t1)
      for (int t2 = 0; t2 < m; ++t2)
        out.second.values[static_cast<std::size_t>(t1) * static_cast<std::size_t>(m) + static_cast<std::size_t>(t2)] +=
            line[static_cast<std::size_t>(t1)] * e(n2, t2);
  }
  for (std::size_t i = 0; i < out.recombined.values.size(); ++i)
    out.recombined.values[i] = out.first.values[i] + out.second.values[i];
  return out;
}

std::vector<cplx> evaluate_at(const SpectralField& f, const std::vector<std::vector<double>>& points,
                              const std::function<bool(std::span<const Coord>)>& keep) {
  ProbeExponentials ex(points, f.dimension(), f.n_max());
  std::vector<cplx> out(points.size());
  std::vector<Coord> n(static_cast<std::size_t>(f.dimension()));
  const auto coeffs = f.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == cplx{}) continue;
    f.point_of(i, n);
    if (keep && !keep(n)) continue;
    for (std::size_t p = 0; p < points.size(); ++p) out[p] += coeffs[i] * ex.mode(p, n);
  }
  return out;
}

std::vector<std::vector<cplx>> sum_trajectory(const SpectralField& f, std::span<const double> lambdas,
                                              const std::vector<std::vector<double>>& probes) {
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    if (!(lambdas[i] >= lambdas[i - 1])) throw InputError("lambda list must be ascending");
  for (double l : lambdas)
    if (!std::isfinite(l)) throw InputError("lambda list must be finite");
  ProbeExponentials ex(probes, f.dimension(), f.n_max());
  const auto order = shell_order(f);
  const auto coeffs = f.coeffs();
  std::vector<std::vector<cplx>> out;
  out.reserve(lambdas.size());
  std::vector<cplx> acc(probes.size());
  std::vector<Coord> n(static_cast<std::size_t>(f.dimension()));
  std::size_t next = 0;
  for (double lambda : lambdas) {
    while (next < order.size() && static_cast<double>(f.norm_sq_of(order[next])) < lambda) {
      f.point_of(order[next], n);
      const cplx c = coeffs[order[next]];
      for (std::size_t p = 0; p < probes.size(); ++p) acc[p] += c * ex.mode(p, n);
      ++next;
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<double> maximal_sum(const SpectralField& f, Coord lambda_max,
                                const std::vector<std::vector<double>>& points) {
  if (lambda_max < 1) throw ParameterError("lambda_max must be >= 1");
  ProbeExponentials ex(points, f.dimension(), f.n_max());
  const auto order = shell_order(f);
  const auto coeffs = f.coeffs();
  std::vector<cplx> acc(points.size());
  std::vector<double> best(points.size(), 0.0);
  std::vector<Coord> n(static_cast<std::size_t>(f.dimension()));
  std::size_t next = 0;
  // S_lambda for integer lambda = shells j <= lambda - 1; only the lambdas
  // where a shell is added change the value.
  for (Coord lambda = 1; lambda <= lambda_max; ++lambda) {
    bool changed = lambda == 1;
    while (next < order.size() && f.norm_sq_of(order[next]) < lambda) {
      f.point_of(order[next], n);
      const cplx c = coeffs[order[next]];
      for (std::size_t p = 0; p < points.size(); ++p) acc[p] += c * ex.mode(p, n);
      ++next;
      changed = true;
    }
    if (changed)
      for (std::size_t p = 0; p < points.size(); ++p) best[p] = std::max(best[p], std::abs(acc[p]));
    if (next == order.size() && !changed) break;
  }
  return best;
}

std::vector<std::vector<double>> ball_points(const TorusGrid& grid, double radius,
                                             std::vector<std::size_t>* flat) {
  std::vector<std::vector<double>> pts;
  const double r2 = radius * radius;
  std::vector<double> x(static_cast<std::size_t>(grid.dimension()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.norm_sq(i) > r2) continue;
    grid.point(i, x);
    pts.push_back(x);
    if (flat) flat->push_back(i);
  }
  return pts;
}

double ball_fraction(const SpectralField& f, double radius, const TorusGrid& grid) {
  const GridField u = synthesize(f, grid);
  const double total = u.l2_norm_sq();
  if (total == 0.0) return 0.0;
  return std::sqrt(u.l2_norm_sq_ball(radius) / total);
}

namespace {

GridField kernel_convolution(const SpectralField& f, const kernel::KernelCoeffs& kc, Coord j,
                             const TorusGrid& grid, bool big) {
  if (kc.dimension() != f.dimension()) throw DimensionError("kernel table and field dimensions differ");
  const Coord jmax = big ? kc.max_j() : kc.max_j() + 1;
  if (j < 0 || j > jmax) throw RangeError("kernel index j outside the table");
  SpectralField g(f.dimension(), f.n_max());
  const auto src = f.coeffs();
  auto dst = g.coeffs();
  const double scale = std::pow(kTwoPi, f.dimension());
  std::vector<Coord> n(static_cast<std::size_t>(f.dimension()));
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] == cplx{}) continue;
    f.point_of(i, n);
    const auto row = kc.row_of(n);
    if (!row) throw RangeError("field mode outside the kernel coefficient table");
    const cplx t = big ? kc.big_theta_row(*row)[static_cast<std::size_t>(j)]
                       : kc.theta_row(*row)[static_cast<std::size_t>(j)];
    dst[i] = scale * t * src[i];
  }
  return synthesize(g, grid);
}

}  // namespace

GridField windowed_convolution(const SpectralField& f, const kernel::KernelCoeffs& kc, Coord j,
                               const TorusGrid& grid, double support_tol) {
  if (!kc.spec().identity) {
    const double frac = ball_fraction(f, kc.spec().R, grid);
    if (frac > support_tol)
      throw PreconditionError("field carries relative L2 mass " + std::to_string(frac) +
                              " on the excluded ball");
  }
  return kernel_convolution(f, kc, j, grid, false);
}

GridField shell_convolution(const SpectralField& f, const kernel::KernelCoeffs& kc, Coord j,
                            const TorusGrid& grid) {
  return kernel_convolution(f, kc, j, grid, true);
}

}  // namespace genloc::series

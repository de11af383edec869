#pragma once

// Fourier series on the torus (-pi, pi]^N: coefficient fields, spectral
// synthesis and analysis, and the partial-sum family.

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "genloc/kernel.hpp"
#include "genloc/lattice.hpp"
#include "genloc/polynomial.hpp"

namespace genloc::series {

using lattice::Coord;
using lattice::LatticePoint;
using cplx = std::complex<double>;

/// Uniform grid x_k = 2 pi k / M - pi, k = 0..M-1, on each axis.
class TorusGrid {
 public:
  /// M must be a power of two >= 2 (ParameterError).
  TorusGrid(int dim, int m);

  int dimension() const { return dim_; }
  int side() const { return m_; }
  std::size_t size() const { return size_; }
  double coord(int k) const;
  /// Coordinates of the flat (row-major) grid index.
  void point(std::size_t flat, std::span<double> out) const;
  double norm_sq(std::size_t flat) const;
  double cell_volume() const;

 private:
  int dim_;
  int m_;
  std::size_t size_;
};

/// Coefficients f_n on the cube |n_i| <= n_max, row-major with index
/// n_i + n_max along each axis.
class SpectralField {
 public:
  SpectralField(int dim, Coord n_max);

  static SpectralField delta(int dim, Coord n_max, const LatticePoint& n, cplx value = 1.0);
  /// Independent complex Gaussian coefficients; `real_valued` symmetrizes
  /// them so that f_{-n} = conj(f_n).
  static SpectralField random(int dim, Coord n_max, std::mt19937_64& rng, bool real_valued);

  int dimension() const { return dim_; }
  Coord n_max() const { return n_max_; }
  Coord side() const { return 2 * n_max_ + 1; }
  std::size_t size() const { return coeffs_.size(); }

  bool contains(std::span<const Coord> n) const;
  std::size_t index_of(std::span<const Coord> n) const;
  void point_of(std::size_t flat, std::span<Coord> out) const;
  Coord norm_sq_of(std::size_t flat) const;

  cplx at(std::span<const Coord> n) const;
  cplx at(const LatticePoint& n) const { return at(n.coords()); }
  void set(std::span<const Coord> n, cplx value);
  void set(const LatticePoint& n, cplx value) { set(n.coords(), value); }

  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<cplx> coeffs() { return coeffs_; }

  /// Marks the field as real-valued after checking f_{-n} = conj(f_n) to
  /// `tol` (PreconditionError otherwise).
  void mark_real(double tol = 1e-12);
  bool real_valued() const { return real_; }
  double conjugate_asymmetry() const;

  /// (2 pi)^N sum |f_n|^2, the L2(T^N) norm squared of the synthesis.
  double l2_norm_sq() const;

 private:
  int dim_;
  Coord n_max_;
  std::vector<cplx> coeffs_;
  bool real_ = false;
};

/// Samples on a TorusGrid.
struct GridField {
  TorusGrid grid;
  std::vector<cplx> values;

  explicit GridField(const TorusGrid& g) : grid(g), values(g.size()) {}

  /// Grid quadrature of |u|^2 over all points, or over {|x| < radius}
  /// (resp. <= when `closed`).
  double l2_norm_sq() const;
  double l2_norm_sq_ball(double radius, bool closed = false) const;
  double max_abs_ball(double radius) const;
};

/// Sum of f_n e^{inx} on the grid. ConfigError unless M >= 2 n_max + 2.
GridField synthesize(const SpectralField& f, const TorusGrid& grid);
/// Same, keeping only the modes for which keep(n) holds.
GridField synthesize_masked(const SpectralField& f, const TorusGrid& grid,
                            const std::function<bool(std::span<const Coord>)>& keep);
/// Coefficients up to n_max from grid samples. ConfigError unless
/// n_max <= M/2 - 1.
SpectralField analyze(const GridField& samples, Coord n_max);

/// S_lambda f = sum over |n|^2 < lambda. ParameterError unless lambda > 0.
GridField spherical_sum(const SpectralField& f, double lambda, const TorusGrid& grid);
/// M_k f = sum over max |n_i| <= k.
GridField square_sum(const SpectralField& f, Coord k, const TorusGrid& grid);
/// R_{k_1..k_N} f = sum over |n_i| <= k_i.
GridField rectangular_sum(const SpectralField& f, std::span<const Coord> limits,
                          const TorusGrid& grid);
/// Rectangular sum with per-axis limits m_i(k).
GridField generalized_square_sum(const SpectralField& f,
                                 const std::vector<std::function<Coord(Coord)>>& limits,
                                 Coord k, const TorusGrid& grid);
/// E(A, lambda) f = sum over A(n) < lambda, after the ellipticity screen.
GridField elliptic_sum(const SpectralField& f, const HomogeneousPolynomial& a, double lambda,
                       const TorusGrid& grid);

/// Two-dimensional square sum written as two one-dimensional families:
///   A_{n1}(x2) = sum_{|n2| <= |n1|} f_{n1,n2} e^{i n2 x2}
///   B_{n2}(x1) = sum_{|n1| <  |n2|} f_{n1,n2} e^{i n1 x1}
/// first = sum_{|n1|<=k} A_{n1}(x2) e^{i n1 x1}, second likewise with B.
struct TevzadzeSplit {
  GridField first;
  GridField second;
  GridField recombined;
};
TevzadzeSplit tevzadze_split(const SpectralField& f, Coord k, const TorusGrid& grid);

/// Values S_lambda f(x) for each lambda (rows) and probe (columns), built by
/// adding shells incrementally. InputError if lambdas are not ascending.
std::vector<std::vector<cplx>> sum_trajectory(const SpectralField& f,
                                              std::span<const double> lambdas,
                                              const std::vector<std::vector<double>>& probes);

/// Direct evaluation of sum over the kept modes at arbitrary points.
std::vector<cplx> evaluate_at(const SpectralField& f,
                              const std::vector<std::vector<double>>& points,
                              const std::function<bool(std::span<const Coord>)>& keep);

/// max over integer lambda in [1, lambda_max] of |S_lambda f(x)| at each
/// point, from a single shell sweep.
std::vector<double> maximal_sum(const SpectralField& f, Coord lambda_max,
                                const std::vector<std::vector<double>>& points);

/// Grid points with |x| <= radius, as coordinate vectors, and their flat
/// indices.
std::vector<std::vector<double>> ball_points(const TorusGrid& grid, double radius,
                                             std::vector<std::size_t>* flat = nullptr);

/// theta_j * f = sum_n (2 pi)^N (theta_j)_n f_n e^{inx} on the grid. The
/// synthesis of f must carry at most `support_tol` of its L2 norm on
/// {|x| < R} (PreconditionError), and every mode of f must lie in the table
/// (RangeError).
GridField windowed_convolution(const SpectralField& f, const kernel::KernelCoeffs& kc, Coord j,
                               const TorusGrid& grid, double support_tol = 1e-6);
/// Same with (Theta_j)_n, without the support check.
GridField shell_convolution(const SpectralField& f, const kernel::KernelCoeffs& kc, Coord j,
                            const TorusGrid& grid);
/// Relative L2 mass of the synthesis on {|x| < radius}.
double ball_fraction(const SpectralField& f, double radius, const TorusGrid& grid);

/// Trigonometric polynomials of degree <= n_max per axis that (numerically)
/// vanish on {|x| < R}. Built from the product cos/sin basis: within each
/// parity block the Gram matrix of the ball inner product is diagonalized,
/// and eigenvectors whose ball energy fraction is at most `tolerance` span
/// the null space.
class SupportProjector {
 public:
  SupportProjector(int dim, Coord n_max, double radius, double tolerance = 1e-13);

  int dimension() const { return dim_; }
  Coord n_max() const { return n_max_; }
  double radius() const { return radius_; }
  std::size_t null_dimension() const;
  std::size_t basis_dimension() const { return basis_size_; }
  /// Largest ball energy fraction among the kept vectors.
  double worst_fraction() const { return worst_; }

  /// Real-valued field sum_i g_i v_i with standard Gaussian g_i over the
  /// kept basis v_i (orthonormal in L2(T^N)).
  SpectralField draw(std::mt19937_64& rng) const;

 private:
  struct Block {
    std::vector<int> parity;                    // 0 = cos, 1 = sin per axis
    std::vector<std::vector<Coord>> freqs;      // basis frequencies a_i >= 0
    std::vector<double> scale;                  // 1 / torus norm
    std::vector<std::vector<double>> vectors;   // kept eigenvectors
  };
  int dim_;
  Coord n_max_;
  double radius_;
  std::size_t basis_size_ = 0;
  double worst_ = 0.0;
  std::vector<Block> blocks_;
};

}  // namespace genloc::series

#pragma once

// Periodized radial window psi and the windowed Dirichlet kernel coefficient
// tables (theta_j)_n and (Theta_j)_n.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "genloc/lattice.hpp"

namespace genloc::kernel {

using lattice::Coord;
using lattice::LatticePoint;
using cplx = std::complex<double>;

struct WindowSpec {
  double R = 1.0;  // outer localization radius
  double r = 0.5;  // inner evaluation radius
  int dim = 2;
  /// Test mode: psi == 1, so psi_m is the unit impulse at m = 0.
  bool identity = false;

  double t1() const { return (R - r) / 3.0; }
  double t2() const { return 2.0 * (R - r) / 3.0; }

  /// Throws ParameterError unless 0 < r < R <= 1 and dim >= 1.
  void validate() const;

  static WindowSpec unit(int dim);
};

/// phi_1 and phi_2 = 1 - phi_1 as functions of the radius.
double phi1(const WindowSpec& spec, double radius);
double phi2(const WindowSpec& spec, double radius);

/// psi(x): phi_2(|x|) after reducing each coordinate into (-pi, pi].
double window_value(const WindowSpec& spec, std::span<const double> x);

/// psi together with its Fourier coefficient table psi_m, |m_i| <= M/2.
/// psi is real and even, so psi_m is real; the table stores the real part and
/// keeps the largest discarded imaginary part as a diagnostic.
class PeriodizedWindow {
 public:
  const WindowSpec& spec() const { return spec_; }
  int dimension() const { return spec_.dim; }
  int grid() const { return grid_; }
  Coord half_width() const { return grid_ / 2; }

  /// psi_m, zero outside the table.
  double coeff(std::span<const Coord> m) const;
  double coeff(const LatticePoint& m) const { return coeff(m.coords()); }
  bool in_table(std::span<const Coord> m) const;

  /// max |psi_m| (1 + |m|)^q over |m_i| <= limit; the default limit M/4 is
  /// the part of the table where the grid quadrature is converged.
  double decay_constant(int q) const { return decay_constant(q, grid_ / 4); }
  double decay_constant(int q, Coord limit) const;
  /// Estimate of sum over |m| > M/2 of |psi_m| from the fitted c_6 decay.
  double truncation_bound() const;
  double max_imaginary() const { return max_imag_; }

  /// Raw table access: side (M+1), row-major, index i_k = m_k + M/2.
  std::span<const double> table() const { return table_; }

 private:
  friend PeriodizedWindow build_window(const WindowSpec& spec, int grid);
  WindowSpec spec_;
  int grid_ = 0;
  std::vector<double> table_;
  double max_imag_ = 0.0;
};

/// Computes psi_m by grid quadrature on the M^N torus grid. M must be a power
/// of two >= 64 (ParameterError); the smooth transition must span at least
/// one grid cell (ResolutionError).
PeriodizedWindow build_window(const WindowSpec& spec, int grid);

/// Coefficient tables over the Euclidean ball |n| <= n_max:
///   (Theta_j)_n = (2 pi)^-N sum_{|m|^2 = j} psi_{n-m},   j = 0..J
///   (theta_j)_n = sum_{i < j} (Theta_i)_n,               j = 0..J+1
class KernelCoeffs {
 public:
  static KernelCoeffs build(const PeriodizedWindow& window, Coord max_j, Coord n_max,
                            int threads = 1);

  int dimension() const { return dim_; }
  Coord max_j() const { return max_j_; }
  Coord n_max() const { return n_max_; }
  const WindowSpec& spec() const { return spec_; }
  int grid() const { return grid_; }

  std::size_t rows() const { return points_.size(); }
  const std::vector<LatticePoint>& points() const { return points_; }
  /// Row of n, or empty when |n| > n_max.
  std::optional<std::size_t> row_of(std::span<const Coord> n) const;

  /// j in [0, J+1].
  std::span<const cplx> theta_row(std::size_t row) const;
  /// j in [0, J].
  std::span<const cplx> big_theta_row(std::size_t row) const;

  double truncation_bound() const { return truncation_bound_; }

 private:
  int dim_ = 0;
  Coord max_j_ = 0;
  Coord n_max_ = 0;
  WindowSpec spec_;
  int grid_ = 0;
  double truncation_bound_ = 0.0;
  std::vector<LatticePoint> points_;
  std::vector<std::int64_t> index_;  // cube |n_i| <= n_max -> row or -1
  std::vector<cplx> theta_;          // rows * (J+2)
  std::vector<cplx> big_theta_;      // rows * (J+1)
};

/// (theta_j)_n; RangeError outside the tabulated j or n.
cplx theta_coeff(const KernelCoeffs& kc, Coord j, const LatticePoint& n);
/// (Theta_j)_n; RangeError outside the tabulated j or n.
cplx big_theta_coeff(const KernelCoeffs& kc, Coord j, const LatticePoint& n);

/// theta(x, lambda) = (2 pi)^-N sum_{|n|^2 < lambda} e^{i n x} by direct
/// summation (ResourceError when the ball exceeds the enumeration budget).
cplx dirichlet_kernel(std::span<const double> x, double lambda);

}  // namespace genloc::kernel

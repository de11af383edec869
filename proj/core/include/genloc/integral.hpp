#pragma once

// Fourier integrals on R^N with f^(xi) = (2 pi)^{-N/2} int f(x) e^{-ix xi} dx:
// spherical partial integrals, the windowed kernel transform, Riesz means and
// elliptic partial integrals.

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "genloc/polynomial.hpp"

namespace genloc::integral {

using cplx = std::complex<double>;
using Points = std::vector<std::vector<double>>;

/// e(x, lambda) = (2 pi)^{-N} int_{|xi| < lambda} e^{ix xi} d xi
///             = (2 pi)^{-N/2} lambda^N J_{N/2}(lambda |x|) / (lambda |x|)^{N/2}.
/// N in [1, 40].
double ball_kernel(double x_norm, double lambda, int dim);

/// Kernel of the Riesz mean of order s: (2 pi)^{-N} int_{|xi|<lambda}
/// (1 - |xi|^2/lambda^2)^s e^{ix xi} d xi = (2 pi)^{-N/2} 2^s Gamma(s+1)
/// lambda^N J_{N/2+s}(t) / t^{N/2+s}, t = lambda |x|. Needs 2s integral and
/// N/2 + s <= 20.
double riesz_kernel(double x_norm, double lambda, double s, int dim);

/// Sampled real field on the grid h Z^N, supported in r_in <= |x| <= a.
class CompactField {
 public:
  /// Samples fn at the grid nodes inside the closed annulus.
  static CompactField sample(int dim, double h, double r_in, double a,
                             const std::function<double(std::span<const double>)>& fn);
  static CompactField zero(int dim, double h, double r_in, double a);

  int dimension() const { return dim_; }
  double spacing() const { return h_; }
  double inner_radius() const { return r_in_; }
  double outer_radius() const { return a_; }
  std::size_t count() const { return values_.size(); }
  std::span<const double> node(std::size_t i) const {
    return {nodes_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  double value(std::size_t i) const { return values_[i]; }
  /// h^N sum f^2.
  double l2_norm_sq() const;

 private:
  int dim_ = 0;
  double h_ = 0.0;
  double r_in_ = 0.0;
  double a_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

/// The integral-side cutoff chi: 0 below (R-r)/3, 1 on [2(R-r)/3, 2A],
/// 0 beyond 3A, smooth steps in between.
struct IntegralWindow {
  double R = 1.0;
  double r = 0.5;
  double A = 1.5;
  /// Test mode: chi == 1 everywhere.
  bool disabled = false;

  double t1() const { return (R - r) / 3.0; }
  double t2() const { return 2.0 * (R - r) / 3.0; }
  /// Throws ParameterError unless 0 < r < R <= A.
  void validate() const;
  double chi(double radius) const;
};

/// f^ of the sampled field by the trapezoid sum.
cplx fourier_transform(const CompactField& f, std::span<const double> xi);

/// E_lambda f(x) = int e(x - y, lambda) f(y) dy by grid quadrature, with the
/// kernel multiplied by chi(x - y) when a window is given. ResolutionError
/// when lambda h > 0.5.
std::vector<cplx> partial_integral(const CompactField& f, double lambda, const Points& points,
                                   const IntegralWindow* window = nullptr, int threads = 1);

/// Polar quadrature over frequency space (N = 2 or 3).
struct FrequencyRule {
  std::size_t radial_panels = 64;
  std::size_t radial_order = 16;
  /// Angular nodes: trapezoid in phi for N = 2; N = 3 uses this many phi
  /// nodes and half as many Gauss nodes in cos(theta).
  std::size_t angular = 256;
};

/// (2 pi)^{-N/2} int_{|xi| < lambda} f^(xi) e^{ix xi} d xi.
std::vector<cplx> partial_integral_spectral(const CompactField& f, double lambda,
                                            const Points& points, const FrequencyRule& rule = {});

/// (2 pi)^{-N/2} int_{A(xi) < lambda} f^(xi) e^{ix xi} d xi, after the
/// ellipticity screen.
std::vector<cplx> elliptic_partial_integral(const CompactField& f, const HomogeneousPolynomial& a,
                                            double lambda, const Points& points,
                                            const FrequencyRule& rule = {});

/// chi^(rho), the radial Fourier transform of the window (N = 2 or 3).
double chi_transform(double rho, const IntegralWindow& w, int dim);

enum class TransformRoute {
  /// (2 pi)^{-N} int_{|eta - xi| < lambda} chi^(xi) d xi with chi^ tabulated.
  reduction,
  /// Hankel transform of e(., lambda) chi in space.
  hankel,
};

/// Tabulated chi^ for the reduction route: piecewise Chebyshev on
/// [0, rho_max] (ResourceError past 1e6 nodes).
class ChiTable {
 public:
  ChiTable(const IntegralWindow& w, int dim, double rho_max);
  double operator()(double rho) const;
  double rho_max() const { return rho_max_; }
  int dimension() const { return dim_; }

 private:
  int dim_;
  double rho_max_;
  double width_;
  std::vector<double> cheb_;  // per panel, kChebDegree + 1 coefficients
};

/// e^_lambda at |eta| = eta_norm. Reduction route truncates chi^ at the
/// table's rho_max.
double windowed_kernel_transform(double lambda, double eta_norm, const IntegralWindow& w, int dim,
                                 TransformRoute route = TransformRoute::hankel,
                                 const ChiTable* table = nullptr);

/// e^_lambda(eta) (derivative 0) or its lambda-derivative (derivative 1,
/// central difference with step 1e-3) at each lambda, from one Hankel plan.
std::vector<double> kernel_transform_scan(double eta_norm, std::span<const double> lambdas,
                                          int derivative, const IntegralWindow& w, int dim);

/// int_0^Lambda |d^j/d lambda e^_lambda(eta)|^2 d lambda, j in {0, 1}; the
/// derivative is a central difference with step 1e-3.
double lambda_energy(double eta_norm, double lambda_max, int derivative, const IntegralWindow& w,
                     int dim);

struct RieszSpec {
  double s = 0.0;
  /// Sobolev index: D^alpha delta lies in H^{-l} for l > N/2 + |alpha|.
  double l = 0.0;
  std::vector<int> alpha;  // empty or all zero: delta itself
  /// Allows s < 0 with a warning on stderr.
  bool probe = false;

  int order() const;
  /// N/2 + |alpha|, the membership threshold.
  double threshold(int dim) const;
};

/// (1 - t^2/lambda^2)^s on [0, lambda), 0 beyond.
double riesz_multiplier(double t, double lambda, double s);

/// E^s_lambda f on a CompactField: space route with riesz_kernel when 2s is
/// an integer, frequency quadrature otherwise.
std::vector<cplx> riesz_mean(const CompactField& f, double s, double lambda, const Points& points,
                             bool probe = false, const FrequencyRule& rule = {});

/// E^s_lambda (D^alpha delta)(x) with (D^alpha delta)^ = (2 pi)^{-N/2} (i xi)^alpha.
/// alpha = 0: radial integral (2 pi)^{-N/2} int_0^lambda m(t) t^{N-1}
/// (t|x|)^{1-N/2} J_{N/2-1}(t|x|) dt; otherwise polar quadrature (N = 2).
cplx riesz_mean_delta(const RieszSpec& spec, double lambda, std::span<const double> x);

enum class Trend { decaying, bounded_oscillating, growing };
std::string to_string(Trend t);

/// Least-squares slope of log(value) against log(lambda); below -0.25 is
/// decaying, above 0.25 growing.
struct TrendFit {
  double slope = 0.0;
  Trend trend = Trend::bounded_oscillating;
};
TrendFit classify_trend(std::span<const double> lambdas, std::span<const double> envelope);

struct ThresholdReport {
  RieszSpec spec;
  std::vector<double> x;
  std::vector<double> lambdas;   // geometric grid
  std::vector<cplx> samples;     // E^s delta at the grid points
  std::vector<double> values;    // |E^s delta| at the grid points
  std::vector<double> envelope;  // max of |E^s delta| over [lambda_i, lambda_{i+1})
  TrendFit fit;
};

/// Evaluates the delta-derivative target on lambda_0 * ratio^i, i < count,
/// with `sub` samples per step for the envelope. Requires |x| > 0.
ThresholdReport threshold_probe(const RieszSpec& spec, std::span<const double> x, double lambda0,
                                double ratio, std::size_t count, std::size_t sub = 32);

}  // namespace genloc::integral

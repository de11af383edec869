#include "genloc/integral.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "genloc/errors.hpp"
#include "genloc/parallel.hpp"
#include "genloc/special.hpp"

namespace genloc::integral {

namespace {

constexpr double kPi = std::numbers::pi;

void check_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be finite and >= 0");
}

void check_points(const Points& points, int dim) {
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != dim) throw DimensionError("evaluation point dimension");
}

// Polar (N = 2) or spherical (N = 3) product rule over {rho < limit(omega)}.
// Calls body(xi, weight) for every node.
template <class Limit, class Body>
void polar_rule(int dim, const FrequencyRule& rule, Limit&& limit, Body&& body) {
  if (rule.radial_panels == 0 || rule.radial_order == 0 || rule.angular < 2)
    throw ParameterError("frequency rule needs positive sizes");
  const auto& gl = quad::gauss_legendre(rule.radial_order);
  auto radial = [&](std::span<const double> omega, double ang_weight) {
    const double lim = limit(omega);
    if (!(lim > 0.0)) return;
    const double width = lim / static_cast<double>(rule.radial_panels);
    std::vector<double> xi(static_cast<std::size_t>(dim));
    for (std::size_t p = 0; p < rule.radial_panels; ++p) {
      const double a = width * static_cast<double>(p);
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double rho = a + 0.5 * width * (gl.nodes[q] + 1.0);
        const double w = 0.5 * width * gl.weights[q] * std::pow(rho, dim - 1) * ang_weight;
        for (int i = 0; i < dim; ++i) xi[static_cast<std::size_t>(i)] = rho * omega[static_cast<std::size_t>(i)];
        body(std::span<const double>(xi), w);
      }
    }
  };
  if (dim == 2) {
    const double dphi = 2.0 * kPi / static_cast<double>(rule.angular);
    for (std::size_t k = 0; k < rule.angular; ++k) {
      const double phi = dphi * static_cast<double>(k);
      const double omega[2] = {std::cos(phi), std::sin(phi)};
      radial(omega, dphi);
    }
  } else if (dim == 3) {
    const auto& gt = quad::gauss_legendre(std::max<std::size_t>(2, rule.angular / 2));
    const double dphi = 2.0 * kPi / static_cast<double>(rule.angular);
    for (std::size_t t = 0; t < gt.nodes.size(); ++t) {
      const double ct = gt.nodes[t];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (std::size_t k = 0; k < rule.angular; ++k) {
        const double phi = dphi * static_cast<double>(k);
        const double omega[3] = {st * std::cos(phi), st * std::sin(phi), ct};
        radial(omega, dphi * gt.weights[t]);
      }
    }
  } else {
    throw DimensionError("frequency quadrature supports N = 2 and N = 3");
  }
}

// (2 pi)^{-N/2} sum over nodes of weight * mult(xi) * f^(xi) e^{ix xi}.
template <class Limit, class Mult>
std::vector<cplx> spectral_sum(const CompactField& f, const Points& points, const FrequencyRule& rule,
                               Limit&& limit, Mult&& mult) {
  check_points(points, f.dimension());
  std::vector<cplx> out(points.size());
  const double norm = std::pow(2.0 * kPi, -0.5 * f.dimension());
  polar_rule(f.dimension(), rule, limit, [&](std::span<const double> xi, double w) {
    const double m = mult(xi);
    if (m == 0.0) return;
    const cplx fh = fourier_transform(f, xi) * (w * m * norm);
    for (std::size_t p = 0; p < points.size(); ++p) {
      double phase = 0.0;
      for (std::size_t i = 0; i < xi.size(); ++i) phase += points[p][i] * xi[i];
      out[p] += fh * std::polar(1.0, phase);
    }
  });
  return out;
}

template <class Kernel>
std::vector<cplx> space_sum(const CompactField& f, const Points& points, int threads, Kernel&& kernel) {
  check_points(points, f.dimension());
  std::vector<cplx> out(points.size());
  const double cell = std::pow(f.spacing(), f.dimension());
  parallel_for(points.size(), threads, [&](std::size_t p) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.count(); ++i) {
      const auto y = f.node(i);
      double d2 = 0.0;
      for (std::size_t a = 0; a < y.size(); ++a) {
        const double d = points[p][a] - y[a];
        d2 += d * d;
      }
      s += kernel(std::sqrt(d2)) * f.value(i);
    }
    out[p] = s * cell;
  });
  return out;
}

}  // namespace

double ball_kernel(double x_norm, double lambda, int dim) {
  if (dim < 1 || dim > 40) throw ParameterError("ball kernel supports 1 <= N <= 40");
  check_lambda(lambda);
  if (!(x_norm >= 0.0)) throw ParameterError("|x| must be >= 0");
  if (lambda == 0.0) return 0.0;
  return std::pow(2.0 * kPi, -0.5 * dim) * std::pow(lambda, dim) *
         bessel_j_scaled(0.5 * dim, lambda * x_norm);
}

double riesz_kernel(double x_norm, double lambda, double s, int dim) {
  if (dim < 1) throw ParameterError("dimension must be >= 1");
  check_lambda(lambda);
  if (!(x_norm >= 0.0)) throw ParameterError("|x| must be >= 0");
  if (!(s >= 0.0) || std::abs(2.0 * s - std::round(2.0 * s)) > 1e-12)
    throw ParameterError("closed-form Riesz kernel needs 2s a nonnegative integer");
  const double nu = 0.5 * dim + s;
  if (nu > 20.0) throw ParameterError("closed-form Riesz kernel needs N/2 + s <= 20");
  if (lambda == 0.0) return 0.0;
  return std::pow(2.0 * kPi, -0.5 * dim) * std::pow(2.0, s) * std::tgamma(s + 1.0) *
         std::pow(lambda, dim) * bessel_j_scaled(nu, lambda * x_norm);
}

CompactField CompactField::sample(int dim, double h, double r_in, double a,
                                  const std::function<double(std::span<const double>)>& fn) {
  if (dim < 1) throw ParameterError("dimension must be >= 1");
  if (!(h > 0.0)) throw ParameterError("grid spacing must be positive");
  if (!(r_in >= 0.0) || !(a > r_in)) throw ParameterError("need 0 <= r_in < a");
  const auto half = static_cast<long long>(std::ceil(a / h));
  if (std::pow(2.0 * static_cast<double>(half) + 1.0, dim) > 5e7)
    throw ResourceError("compact field grid exceeds 5e7 nodes");
  CompactField f;
  f.dim_ = dim;
  f.h_ = h;
  f.r_in_ = r_in;
  f.a_ = a;
  std::vector<long long> idx(static_cast<std::size_t>(dim), -half);
  std::vector<double> x(static_cast<std::size_t>(dim));
  const double lo2 = r_in * r_in;
  const double hi2 = a * a;
  while (true) {
    double r2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      x[static_cast<std::size_t>(i)] = h * static_cast<double>(idx[static_cast<std::size_t>(i)]);
      r2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    }
    if (r2 >= lo2 && r2 <= hi2) {
      const double v = fn ? fn(x) : 0.0;
      if (v != 0.0) {
        f.nodes_.insert(f.nodes_.end(), x.begin(), x.end());
        f.values_.push_back(v);
      }
    }
    int i = dim - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == half) idx[static_cast<std::size_t>(i--)] = -half;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
  }
  return f;
}

CompactField CompactField::zero(int dim, double h, double r_in, double a) {
  return sample(dim, h, r_in, a, nullptr);
}

double CompactField::l2_norm_sq() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return s * std::pow(h_, dim_);
}

void IntegralWindow::validate() const {
  if (!(r > 0.0) || !(R > r) || !(A >= R)) throw ParameterError("integral window needs 0 < r < R <= A");
}

double IntegralWindow::chi(double radius) const {
  if (disabled) return 1.0;
  if (radius <= t1()) return 0.0;
  if (radius < t2()) return smooth_step(radius, t1(), t2());
  if (radius <= 2.0 * A) return 1.0;
  if (radius < 3.0 * A) return 1.0 - smooth_step(radius, 2.0 * A, 3.0 * A);
  return 0.0;
}

cplx fourier_transform(const CompactField& f, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != f.dimension()) throw DimensionError("frequency dimension");
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.count(); ++i) {
    const auto y = f.node(i);
    double phase = 0.0;
    for (std::size_t a = 0; a < y.size(); ++a) phase += y[a] * xi[a];
    s += f.value(i) * std::polar(1.0, -phase);
  }
  return s * std::pow(f.spacing(), f.dimension()) * std::pow(2.0 * kPi, -0.5 * f.dimension());
}

std::vector<cplx> partial_integral(const CompactField& f, double lambda, const Points& points,
                                   const IntegralWindow* window, int threads) {
  check_lambda(lambda);
  if (lambda * f.spacing() > 0.5)
    throw ResolutionError("lambda h = " + std::to_string(lambda * f.spacing()) +
                          " exceeds 0.5; refine the field grid");
  if (window) window->validate();
  const int dim = f.dimension();
  return space_sum(f, points, threads, [&](double d) {
    const double k = ball_kernel(d, lambda, dim);
    return window ? k * window->chi(d) : k;
  });
}

std::vector<cplx> partial_integral_spectral(const CompactField& f, double lambda, const Points& points,
                                            const FrequencyRule& rule) {
  check_lambda(lambda);
  return spectral_sum(
      f, points, rule, [lambda](std::span<const double>) { return lambda; },
      [](std::span<const double>) { return 1.0; });
}

std::vector<cplx> elliptic_partial_integral(const CompactField& f, const HomogeneousPolynomial& a,
                                            double lambda, const Points& points,
                                            const FrequencyRule& rule) {
  if (a.dimension() != f.dimension()) throw DimensionError("polynomial and field dimensions differ");
  if (!std::isfinite(lambda)) throw ParameterError("lambda must be finite");
  ellipticity_screen(a);
  if (lambda <= 0.0) return std::vector<cplx>(points.size());
  // A(rho omega) = rho^m A(omega), so the sublevel set is rho < (lambda / A(omega))^{1/m}.
  const double inv_m = 1.0 / a.degree();
  return spectral_sum(
      f, points, rule,
      [&](std::span<const double> omega) { return std::pow(lambda / a(omega), inv_m); },
      [](std::span<const double>) { return 1.0; });
}

double riesz_multiplier(double t, double lambda, double s) {
  if (!(lambda > 0.0) || t >= lambda) return 0.0;
  if (s == 0.0) return 1.0;
  return std::pow(1.0 - (t * t) / (lambda * lambda), s);
}

std::vector<cplx> riesz_mean(const CompactField& f, double s, double lambda, const Points& points,
                             bool probe, const FrequencyRule& rule) {
  check_lambda(lambda);
  if (s < 0.0 && !probe) throw ParameterError("negative Riesz order needs probe mode");
  if (s < 0.0) {
    std::fprintf(stderr, "warning: Riesz mean of negative order %g evaluated in probe mode\n", s);
  }
  const bool closed = s >= 0.0 && std::abs(2.0 * s - std::round(2.0 * s)) <= 1e-12 &&
                      0.5 * f.dimension() + s <= 20.0;
  if (closed) {
    if (lambda * f.spacing() > 0.5)
      throw ResolutionError("lambda h = " + std::to_string(lambda * f.spacing()) + " exceeds 0.5");
    const int dim = f.dimension();
    return space_sum(f, points, 1, [&](double d) { return riesz_kernel(d, lambda, s, dim); });
  }
  return spectral_sum(
      f, points, rule, [lambda](std::span<const double>) { return lambda; },
      [&](std::span<const double> xi) {
        double r2 = 0.0;
        for (double v : xi) r2 += v * v;
        return riesz_multiplier(std::sqrt(r2), lambda, s);
      });
}

}  // namespace genloc::integral

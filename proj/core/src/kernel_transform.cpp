#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "genloc/errors.hpp"
#include "genloc/integral.hpp"
#include "genloc/special.hpp"

namespace genloc::integral {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kChebDegree = 20;

void check_window(const IntegralWindow& w, int dim) {
  w.validate();
  if (w.disabled) throw ParameterError("the kernel transform needs a compactly supported window");
  if (dim < 2 || dim > 40) throw DimensionError("window transform supports 2 <= N <= 40");
}

// Composite Gauss-Legendre nodes on [a, b] fine enough for an integrand
// oscillating at angular frequency `freq`.
void append_panels(std::vector<double>& nodes, std::vector<double>& weights, double a, double b,
                   double freq) {
  if (!(b > a)) return;
  const auto panels = static_cast<std::size_t>(std::ceil(freq * (b - a) / kPi)) + 2;
  const auto& gl = quad::gauss_legendre(16);
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + width * static_cast<double>(p);
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      nodes.push_back(lo + 0.5 * width * (gl.nodes[q] + 1.0));
      weights.push_back(0.5 * width * gl.weights[q]);
    }
  }
}

// Space-side rule for e^_lambda(eta) = int e(t, lambda) chi(t) t^{N-1}
// S(t |eta|) dt with S the scaled J_{N/2-1}, valid for lambda <= lambda_max.
class HankelPlan {
 public:
  HankelPlan(double eta, double lambda_max, const IntegralWindow& w, int dim) : dim_(dim) {
    const double freq = lambda_max + eta;
    std::vector<double> weights;
    append_panels(nodes_, weights, w.t1(), w.t2(), freq);
    append_panels(nodes_, weights, w.t2(), 2.0 * w.A, freq);
    append_panels(nodes_, weights, 2.0 * w.A, 3.0 * w.A, freq);
    coef_.resize(nodes_.size());
    const double nu = 0.5 * dim - 1.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double t = nodes_[i];
      coef_[i] = weights[i] * w.chi(t) * std::pow(t, dim - 1) * bessel_j_scaled(nu, t * eta);
    }
  }

  double operator()(double lambda) const {
    if (lambda <= 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) s += coef_[i] * ball_kernel(nodes_[i], lambda, dim_);
    return s;
  }

 private:
  int dim_;
  std::vector<double> nodes_;
  std::vector<double> coef_;
};

// Measure of {omega in S^{N-1} : |eta - rho omega| < lambda}.
double sphere_cap(double rho, double eta, double lambda, int dim) {
  const double full = dim == 2 ? 2.0 * kPi : 4.0 * kPi;
  if (eta == 0.0 || rho == 0.0) return rho < lambda - eta ? full : 0.0;
  const double c = (eta * eta + rho * rho - lambda * lambda) / (2.0 * rho * eta);
  if (c >= 1.0) return 0.0;
  if (c <= -1.0) return full;
  return dim == 2 ? 2.0 * std::acos(c) : 2.0 * kPi * (1.0 - c);
}

}  // namespace

double chi_transform(double rho, const IntegralWindow& w, int dim) {
  check_window(w, dim);
  if (!(rho >= 0.0)) throw ParameterError("rho must be >= 0");
  const double nu = 0.5 * dim - 1.0;
  auto integrand = [&](double t) { return w.chi(t) * std::pow(t, dim - 1) * bessel_j_scaled(nu, t * rho); };
  std::vector<double> nodes;
  std::vector<double> weights;
  append_panels(nodes, weights, w.t1(), w.t2(), rho);
  append_panels(nodes, weights, 2.0 * w.A, 3.0 * w.A, rho);
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * integrand(nodes[i]);
  // Plateau chi = 1: t^{N-1} S(t rho) has antiderivative t^N J_{N/2}(rho t) / (rho t)^{N/2}.
  auto anti = [&](double t) { return std::pow(t, dim) * bessel_j_scaled(0.5 * dim, rho * t); };
  return s + anti(2.0 * w.A) - anti(w.t2());
}

ChiTable::ChiTable(const IntegralWindow& w, int dim, double rho_max) : dim_(dim), rho_max_(rho_max) {
  check_window(w, dim);
  if (dim > 3) throw DimensionError("reduction route supports N = 2 and N = 3");
  if (!(rho_max > 0.0)) throw ParameterError("rho_max must be positive");
  width_ = std::min(0.25, 1.0 / (3.0 * w.A));
  const auto panels = static_cast<std::size_t>(std::ceil(rho_max / width_));
  if (panels * (kChebDegree + 1) > 1000000) throw ResourceError("chi table exceeds 1e6 nodes");
  cheb_.assign(panels * (kChebDegree + 1), 0.0);
  constexpr int n = kChebDegree + 1;
  std::vector<double> vals(n);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = width_ * static_cast<double>(p);
    for (int j = 0; j < n; ++j) {
      const double x = std::cos(kPi * (j + 0.5) / n);
      vals[static_cast<std::size_t>(j)] = chi_transform(lo + 0.5 * width_ * (x + 1.0), w, dim);
    }
    for (int k = 0; k < n; ++k) {
      double c = 0.0;
      for (int j = 0; j < n; ++j) c += vals[static_cast<std::size_t>(j)] * std::cos(kPi * k * (j + 0.5) / n);
      cheb_[p * n + static_cast<std::size_t>(k)] = (k == 0 ? 1.0 : 2.0) * c / n;
    }
  }
}

double ChiTable::operator()(double rho) const {
  if (rho < 0.0 || rho > rho_max_) return 0.0;
  constexpr std::size_t n = kChebDegree + 1;
  const std::size_t panels = cheb_.size() / n;
  const auto p = std::min(panels - 1, static_cast<std::size_t>(rho / width_));
  const double x = 2.0 * (rho - width_ * static_cast<double>(p)) / width_ - 1.0;
  const double* c = cheb_.data() + p * n;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = n - 1; k >= 1; --k) {
    const double b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

double windowed_kernel_transform(double lambda, double eta_norm, const IntegralWindow& w, int dim,
                                 TransformRoute route, const ChiTable* table) {
  check_window(w, dim);
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be finite and >= 0");
  if (!(eta_norm >= 0.0) || !std::isfinite(eta_norm)) throw ParameterError("|eta| must be finite and >= 0");
  if (lambda == 0.0) return 0.0;
  if (route == TransformRoute::hankel) return HankelPlan(eta_norm, lambda, w, dim)(lambda);

  if (!table) throw DependencyError("reduction route needs a chi table");
  if (table->dimension() != dim) throw DimensionError("chi table dimension");
  // Breakpoints of the cap measure, then pieces no longer than 0.25; pieces
  // touching a breakpoint use tanh-sinh for the square-root edge.
  const double rmax = table->rho_max();
  std::vector<double> cuts{0.0};
  for (double b : {std::abs(lambda - eta_norm), lambda + eta_norm})
    if (b > 0.0 && b < rmax) cuts.push_back(b);
  cuts.push_back(rmax);
  std::sort(cuts.begin(), cuts.end());
  auto integrand = [&](double rho) {
    return (*table)(rho) * std::pow(rho, dim - 1) * sphere_cap(rho, eta_norm, lambda, dim);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  const auto& gl = quad::gauss_legendre(16);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s];
    const double b = cuts[s + 1];
    if (!(b > a)) continue;
    const auto pieces = static_cast<std::size_t>(std::ceil((b - a) / 0.25));
    const double width = (b - a) / static_cast<double>(pieces);
    for (std::size_t p = 0; p < pieces; ++p) {
      const double lo = a + width * static_cast<double>(p);
      const double hi = lo + width;
      const bool edge = (p == 0 && s > 0) || (p + 1 == pieces && s + 2 < cuts.size());
      if (edge) {
        total += ts.integrate(integrand, lo, hi);
      } else {
        for (std::size_t q = 0; q < gl.nodes.size(); ++q)
          total += 0.5 * width * gl.weights[q] * integrand(lo + 0.5 * width * (gl.nodes[q] + 1.0));
      }
    }
  }
  return total * std::pow(2.0 * kPi, -dim);
}

std::vector<double> kernel_transform_scan(double eta_norm, std::span<const double> lambdas,
                                          int derivative, const IntegralWindow& w, int dim) {
  check_window(w, dim);
  if (derivative != 0 && derivative != 1) throw ParameterError("derivative order must be 0 or 1");
  if (!(eta_norm >= 0.0) || !std::isfinite(eta_norm)) throw ParameterError("|eta| must be finite and >= 0");
  constexpr double step = 1e-3;
  double top = 0.0;
  for (double l : lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw ParameterError("lambda must be finite and >= 0");
    top = std::max(top, l);
  }
  const HankelPlan plan(eta_norm, top + step, w, dim);
  std::vector<double> out(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double lam = lambdas[i];
    out[i] = derivative == 0 ? plan(lam) : (plan(lam + step) - plan(lam - step)) / (2.0 * step);
  }
  return out;
}

double lambda_energy(double eta_norm, double lambda_max, int derivative, const IntegralWindow& w,
                     int dim) {
  check_window(w, dim);
  if (derivative != 0 && derivative != 1) throw ParameterError("derivative order must be 0 or 1");
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) throw ParameterError("Lambda must be positive");
  constexpr double step = 1e-3;
  const HankelPlan plan(eta_norm, lambda_max + step, w, dim);
  const auto& gl = quad::gauss_legendre(8);
  const auto panels = static_cast<std::size_t>(std::ceil(lambda_max / 0.25));
  const double width = lambda_max / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = width * static_cast<double>(p);
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double lam = lo + 0.5 * width * (gl.nodes[q] + 1.0);
      const double v = derivative == 0 ? plan(lam) : (plan(lam + step) - plan(lam - step)) / (2.0 * step);
      total += 0.5 * width * gl.weights[q] * v * v;
    }
  }
  return total;
}

}  // namespace genloc::integral

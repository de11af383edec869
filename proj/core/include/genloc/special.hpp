#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace genloc {

/// C-infinity transition: 0 for t <= a, 1 for t >= b, g(u)/(g(u)+g(1-u)) with
/// g(u) = exp(-1/u) and u = (t-a)/(b-a) in between. Throws ParameterError if
/// a >= b.
double smooth_step(double t, double a, double b);

/// Bessel function of the first kind J_nu(t), t >= 0, for integer and
/// half-integer orders 0 <= nu <= 20. Power series up to t = 20, Hankel
/// expansion (or the closed form for half-integers) plus forward recurrence
/// beyond.
double bessel_j(double nu, double t);

/// J_nu(t) / t^nu, finite at t = 0 where it equals 1 / (2^nu Gamma(nu+1)).
double bessel_j_scaled(double nu, double t);

namespace quad {

/// Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const Rule& gauss_legendre(std::size_t order);

/// Composite Gauss-Legendre over `panels` equal panels of [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::size_t panels, std::size_t order = 16);

}  // namespace quad

}  // namespace genloc

#include <cmath>
#include <numbers>

#include "genloc/errors.hpp"
#include "genloc/special.hpp"

namespace genloc {

namespace {

constexpr double kSeriesLimit = 20.0;
constexpr double kMaxOrder = 20.0;

bool is_half_integer(double nu) { return std::abs(nu - std::floor(nu) - 0.5) < 1e-12; }
bool is_integer(double nu) { return std::abs(nu - std::round(nu)) < 1e-12; }

void check_order(double nu) {
  if (!(nu >= 0.0 && nu <= kMaxOrder) || !(is_integer(nu) || is_half_integer(nu)))
    throw ParameterError("bessel_j supports integer and half-integer orders in [0, 20]");
}

// sum_k (-1)^k (t/2)^(2k) / (k! Gamma(k + nu + 1)), i.e. J_nu(t) / (t/2)^nu.
long double series_scaled(double nu, double t) {
  const long double x = static_cast<long double>(t) * 0.5L;
  const long double x2 = x * x;
  long double term = 1.0L / std::tgamma(static_cast<long double>(nu) + 1.0L);
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -x2 / (static_cast<long double>(k) * (static_cast<long double>(k) + nu));
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum) && k > static_cast<int>(x)) break;
  }
  return sum;
}

// Hankel large-argument expansion, truncated at the smallest term.
double hankel(double nu, double t) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double a = 1.0;  // a_k(nu) / t^k
  double prev = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (k * 8.0 * t);
    if (std::abs(a) > prev) break;
    prev = std::abs(a);
    // k odd feeds Q with sign (-1)^((k-1)/2); k even feeds P with (-1)^(k/2).
    if (k % 2 == 1)
      q += ((k / 2) % 2 == 0 ? a : -a);
    else
      p += ((k / 2) % 2 == 0 ? a : -a);
    if (prev < 1e-17) break;
  }
  const double w = t - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * t)) * (p * std::cos(w) - q * std::sin(w));
}

// Large-t value via two seed orders and upward recurrence (stable for t > nu).
double large_argument(double nu, double t) {
  double lo;
  double hi;
  double order;
  if (is_half_integer(nu)) {
    const double s = std::sqrt(2.0 / (std::numbers::pi * t));
    lo = s * std::cos(t);  // J_{-1/2}
    hi = s * std::sin(t);  // J_{1/2}
    order = 0.5;
  } else {
    lo = hankel(0.0, t);
    hi = hankel(1.0, t);
    order = 1.0;
    if (nu == 0.0) return lo;
  }
  while (order < nu - 1e-12) {
    const double next = 2.0 * order / t * hi - lo;
    lo = hi;
    hi = next;
    order += 1.0;
  }
  return hi;
}

}  // namespace

double bessel_j(double nu, double t) {
  check_order(nu);
  if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("bessel_j needs finite t >= 0");
  if (t == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (t <= kSeriesLimit)
    return static_cast<double>(series_scaled(nu, t) *
                               std::pow(static_cast<long double>(t) * 0.5L, nu));
  return large_argument(nu, t);
}

double bessel_j_scaled(double nu, double t) {
  check_order(nu);
  if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("bessel_j needs finite t >= 0");
  if (t <= kSeriesLimit)
    return static_cast<double>(series_scaled(nu, t) / std::pow(2.0L, static_cast<long double>(nu)));
  return large_argument(nu, t) / std::pow(t, nu);
}

}  // namespace genloc

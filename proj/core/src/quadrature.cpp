#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "genloc/errors.hpp"
#include "genloc/special.hpp"

namespace genloc {

double smooth_step(double t, double a, double b) {
  if (!(a < b)) throw ParameterError("smooth_step needs a < b");
  if (t <= a) return 0.0;
  if (t >= b) return 1.0;
  const double u = (t - a) / (b - a);
  const double g0 = std::exp(-1.0 / u);
  const double g1 = std::exp(-1.0 / (1.0 - u));
  return g0 / (g0 + g1);
}

namespace quad {

namespace {

Rule make_rule(std::size_t order) {
  Rule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const auto n = static_cast<double>(order);
  for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= order; ++k) {
        const auto kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const Rule& gauss_legendre(std::size_t order) {
  if (order < 1 || order > 512) throw ParameterError("Gauss-Legendre order must be in [1, 512]");
  static std::mutex mu;
  static std::map<std::size_t, Rule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, std::size_t panels,
                 std::size_t order) {
  if (panels == 0) throw ParameterError("integrate needs at least one panel");
  const Rule& rule = gauss_legendre(order);
  const double h = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * s;
  }
  return total;
}

}  // namespace quad

}  // namespace genloc

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "genloc/errors.hpp"
#include "genloc/integral.hpp"
#include "genloc/special.hpp"

namespace genloc::integral {

namespace {

constexpr double kPi = std::numbers::pi;

bool integral_order(double s) { return std::abs(s - std::round(s)) <= 1e-12; }

// Radial nodes on [0, lambda] for an integrand oscillating at frequency
// `freq`. A non-integral order puts a (1 - t/lambda)^s edge at lambda, so the
// last panel is split geometrically.
void radial_nodes(double lambda, double freq, double s, std::vector<double>& t, std::vector<double>& w) {
  const auto& gl = quad::gauss_legendre(16);
  const auto panels = static_cast<std::size_t>(std::ceil(freq * lambda / kPi)) + 4;
  const double width = lambda / static_cast<double>(panels);
  auto add = [&](double a, double b) {
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      t.push_back(a + 0.5 * (b - a) * (gl.nodes[q] + 1.0));
      w.push_back(0.5 * (b - a) * gl.weights[q]);
    }
  };
  const std::size_t regular = integral_order(s) ? panels : panels - 1;
  for (std::size_t p = 0; p < regular; ++p) add(width * static_cast<double>(p), width * static_cast<double>(p + 1));
  if (regular < panels) {
    double a = width * static_cast<double>(regular);
    double gap = lambda - a;
    for (int level = 0; level < 40; ++level) {
      gap *= 0.5;
      add(a, lambda - gap);
      a = lambda - gap;
    }
  }
}

}  // namespace

int RieszSpec::order() const {
  int total = 0;
  for (int a : alpha) total += a;
  return total;
}

double RieszSpec::threshold(int dim) const { return 0.5 * dim + order(); }

cplx riesz_mean_delta(const RieszSpec& spec, double lambda, std::span<const double> x) {
  const int dim = static_cast<int>(x.size());
  if (dim < 1) throw DimensionError("evaluation point needs N >= 1");
  if (!spec.alpha.empty() && static_cast<int>(spec.alpha.size()) != dim)
    throw DimensionError("multi-index length differs from the point dimension");
  for (int a : spec.alpha)
    if (a < 0) throw ParameterError("multi-index entries must be >= 0");
  if (spec.s < 0.0 && !spec.probe) throw ParameterError("negative Riesz order needs probe mode");
  if (spec.s < 0.0) std::fprintf(stderr, "warning: Riesz mean of negative order %g evaluated in probe mode\n", spec.s);
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be finite and >= 0");
  if (lambda == 0.0) return 0.0;

  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  const double r = std::sqrt(r2);
  std::vector<double> t;
  std::vector<double> w;

  if (spec.order() == 0) {
    radial_nodes(lambda, r, spec.s, t, w);
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double ang = dim == 1 ? std::sqrt(2.0 / kPi) * std::cos(t[i] * r)
                                  : bessel_j_scaled(0.5 * dim - 1.0, t[i] * r);
      s += w[i] * riesz_multiplier(t[i], lambda, spec.s) * std::pow(t[i], dim - 1) * ang;
    }
    return s * std::pow(2.0 * kPi, -0.5 * dim);
  }

  if (dim != 2) throw DimensionError("delta derivatives are evaluated for N = 2 only");
  // (2 pi)^{-N} int m(|xi|) (i xi)^alpha e^{ix xi} d xi in polar coordinates.
  radial_nodes(lambda, r, spec.s, t, w);
  const auto angular = static_cast<std::size_t>(2.0 * std::ceil(lambda * r)) + 64;
  const double dphi = 2.0 * kPi / static_cast<double>(angular);
  const cplx ipow = std::pow(cplx(0.0, 1.0), spec.order());
  cplx total = 0.0;
  for (std::size_t k = 0; k < angular; ++k) {
    const double phi = dphi * static_cast<double>(k);
    const double om[2] = {std::cos(phi), std::sin(phi)};
    const double ang = std::pow(om[0], spec.alpha[0]) * std::pow(om[1], spec.alpha[1]);
    if (ang == 0.0) continue;
    const double proj = x[0] * om[0] + x[1] * om[1];
    cplx radial = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
      radial += w[i] * riesz_multiplier(t[i], lambda, spec.s) * std::pow(t[i], 1 + spec.order()) *
                std::polar(1.0, t[i] * proj);
    total += dphi * ang * radial;
  }
  return total * ipow * std::pow(2.0 * kPi, -2.0);
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::decaying:
      return "decaying";
    case Trend::bounded_oscillating:
      return "bounded-oscillating";
    case Trend::growing:
      return "growing";
  }
  return "unknown";
}

TrendFit classify_trend(std::span<const double> lambdas, std::span<const double> envelope) {
  if (lambdas.size() != envelope.size() || lambdas.size() < 2)
    throw InputError("trend fit needs at least two (lambda, value) pairs");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw InputError("trend fit needs positive lambdas");
    const double lx = std::log(lambdas[i]);
    const double ly = std::log(std::max(envelope[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den <= 0.0) throw InputError("trend fit needs distinct lambdas");
  TrendFit fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.trend = fit.slope < -0.25 ? Trend::decaying : fit.slope > 0.25 ? Trend::growing : Trend::bounded_oscillating;
  return fit;
}

ThresholdReport threshold_probe(const RieszSpec& spec, std::span<const double> x, double lambda0,
                                double ratio, std::size_t count, std::size_t sub) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  if (!(r2 > 0.0)) throw PreconditionError("threshold probe needs a point off the support, |x| > 0");
  if (!(lambda0 > 0.0) || !(ratio > 1.0) || count < 2 || sub < 1)
    throw ParameterError("threshold probe needs lambda0 > 0, ratio > 1, count >= 2, sub >= 1");
  ThresholdReport rep;
  rep.spec = spec;
  rep.x.assign(x.begin(), x.end());
  for (std::size_t i = 0; i < count; ++i) {
    const double lam = lambda0 * std::pow(ratio, static_cast<double>(i));
    rep.lambdas.push_back(lam);
    rep.samples.push_back(riesz_mean_delta(spec, lam, x));
    rep.values.push_back(std::abs(rep.samples.back()));
    double env = rep.values.back();
    for (std::size_t k = 1; k < sub; ++k) {
      const double lk = lam * std::pow(ratio, static_cast<double>(k) / static_cast<double>(sub));
      env = std::max(env, std::abs(riesz_mean_delta(spec, lk, x)));
    }
    rep.envelope.push_back(env);
  }
  rep.fit = classify_trend(rep.lambdas, rep.envelope);
  return rep;
}

}  // namespace genloc::integral

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "genloc/errors.hpp"
#include "genloc/integral.hpp"
#include "genloc/polynomial.hpp"

namespace gi = genloc::integral;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Adaptive Gauss-Kronrod on unit pieces; fine for the oscillatory radial
// integrands below.
double piecewise(const std::function<double(double)>& f, double a, double b, double piece = 0.5) {
  const auto n = static_cast<int>(std::ceil((b - a) / piece));
  const double w = (b - a) / n;
  double s = 0.0;
  for (int k = 0; k < n; ++k)
    s += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a + k * w, a + (k + 1) * w, 8, 1e-14);
  return s;
}

// Fixed 20-point Gauss rule per piece, for integrands that are expensive to
// evaluate and smooth.
double fixed_gauss(const std::function<double(double)>& f, double a, double b, double piece) {
  const auto n = static_cast<int>(std::ceil((b - a) / piece));
  const double w = (b - a) / n;
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += boost::math::quadrature::gauss<double, 20>::integrate(f, a + k * w, a + (k + 1) * w);
  return s;
}

// (2 pi)^{-N} int_{|xi|<lambda} m(|xi|) e^{ix xi} d xi, reduced to a radial
// integral with std::cyl_bessel_j (N = 2) or sin (N = 3).
double radial_oracle(double r, double lambda, int dim, const std::function<double(double)>& m) {
  if (dim == 2) {
    return piecewise([&](double t) { return m(t) * t * std::cyl_bessel_j(0.0, t * r); }, 0.0, lambda) /
           (2 * kPi);
  }
  auto sinc = [&](double t) { return r == 0.0 ? 1.0 : std::sin(t * r) / (t * r); };
  return piecewise([&](double t) { return m(t) * t * t * sinc(t); }, 0.0, lambda) * 4 * kPi /
         std::pow(2 * kPi, 3);
}

double bump(std::span<const double> y) {
  const double r = std::hypot(y[0], y[1]);
  const double u = (r - 1.35) / 0.15;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u)) * (1.0 + 0.5 * y[0]);
}

gi::CompactField annulus_field(double h) { return gi::CompactField::sample(2, h, 1.2, 1.5, bump); }

const gi::Points kInner{{0.0, 0.0}, {0.3, -0.2}, {-0.1, 0.45}, {0.35, 0.35}};

}  // namespace

TEST(BallKernel, MatchesRadialQuadratureMatrix) {
  double worst = 0.0;
  for (int dim : {2, 3})
    for (double lambda : {1.0, 5.0, 20.0})
      for (double r : {0.1, 1.0, 3.0}) {
        const double ref = radial_oracle(r, lambda, dim, [](double) { return 1.0; });
        const double got = gi::ball_kernel(r, lambda, dim);
        const double err = std::abs(got - ref) / std::max(1.0, std::abs(ref));
        worst = std::max(worst, err);
        EXPECT_LT(err, 1e-6) << "N=" << dim << " lambda=" << lambda << " |x|=" << r;
      }
  RecordProperty("worst_relative", std::to_string(worst));
  EXPECT_NEAR(gi::ball_kernel(0.0, 1.0, 2), 1.0 / (4 * kPi), 1e-15);
  EXPECT_NEAR(gi::ball_kernel(0.0, 2.0, 3), 8.0 / (6 * kPi * kPi), 1e-14);
}

TEST(BallKernel, TwoDimensionalAngularQuadrature) {
  // Fully two-dimensional check: trapezoid in phi, Gauss-Kronrod in rho.
  const double r = 0.7;
  const double lambda = 6.0;
  const int nphi = 256;
  auto inner = [&](double rho) {
    double s = 0.0;
    for (int k = 0; k < nphi; ++k) s += std::cos(rho * r * std::cos(2 * kPi * k / nphi));
    return rho * s * (2 * kPi / nphi);
  };
  const double ref = piecewise(inner, 0.0, lambda) / (4 * kPi * kPi);
  EXPECT_NEAR(gi::ball_kernel(r, lambda, 2), ref, 1e-10);
}

TEST(RieszKernel, ClosedFormMatchesQuadrature) {
  for (double s : {0.0, 0.5, 1.0, 2.0})
    for (double lambda : {2.0, 12.0})
      for (double r : {0.0, 0.4, 2.5}) {
        const double ref = radial_oracle(r, lambda, 2, [&](double t) { return gi::riesz_multiplier(t, lambda, s); });
        EXPECT_NEAR(gi::riesz_kernel(r, lambda, s, 2), ref, 1e-7 * std::max(1.0, std::abs(ref)))
            << "s=" << s << " lambda=" << lambda << " r=" << r;
      }
  EXPECT_NEAR(gi::riesz_kernel(0.9, 7.0, 0.0, 3), gi::ball_kernel(0.9, 7.0, 3), 1e-13);
}

TEST(CompactField, SamplingAndNorm) {
  const auto f = annulus_field(0.05);
  EXPECT_GT(f.count(), 0u);
  for (std::size_t i = 0; i < f.count(); ++i) {
    const auto y = f.node(i);
    const double r = std::hypot(y[0], y[1]);
    EXPECT_GE(r, 1.2 - 1e-12);
    EXPECT_LE(r, 1.5 + 1e-12);
  }
  // Radial part integrates in closed form only numerically; compare the
  // trapezoid norm on two spacings.
  EXPECT_NEAR(annulus_field(0.01).l2_norm_sq(), annulus_field(0.005).l2_norm_sq(), 1e-6);
  EXPECT_EQ(gi::CompactField::zero(2, 0.1, 1.0, 2.0).l2_norm_sq(), 0.0);
}

TEST(PartialIntegral, SpaceAndSpectralRoutesAgree) {
  const auto f = annulus_field(0.04);
  for (double lambda : {3.0, 10.0}) {
    const auto space = gi::partial_integral(f, lambda, kInner);
    gi::FrequencyRule rule;
    rule.radial_panels = 16;
    rule.angular = 128;
    const auto spec = gi::partial_integral_spectral(f, lambda, kInner, rule);
    double scale = 0.0;
    for (const auto& v : space) scale = std::max(scale, std::abs(v));
    for (std::size_t p = 0; p < kInner.size(); ++p)
      EXPECT_LT(std::abs(space[p] - spec[p]), 1e-4 * scale) << "lambda=" << lambda << " p=" << p;
  }
}

TEST(PartialIntegral, ZeroFieldAndGate) {
  const auto z = gi::CompactField::zero(2, 0.04, 1.2, 1.5);
  for (const auto& v : gi::partial_integral(z, 5.0, kInner)) EXPECT_EQ(v, cplx(0.0));
  const auto f = annulus_field(0.04);
  EXPECT_NO_THROW(gi::partial_integral(f, 12.5, kInner));
  EXPECT_THROW(gi::partial_integral(f, 15.0, kInner), genloc::ResolutionError);
}

TEST(PartialIntegral, WindowDoesNotChangeTheInnerBall) {
  const auto f = annulus_field(0.04);
  gi::IntegralWindow w;
  for (double lambda : {2.0, 7.0, 12.0}) {
    const auto plain = gi::partial_integral(f, lambda, kInner);
    const auto windowed = gi::partial_integral(f, lambda, kInner, &w);
    for (std::size_t p = 0; p < kInner.size(); ++p) EXPECT_LT(std::abs(plain[p] - windowed[p]), 1e-6);
  }
  gi::IntegralWindow off;
  off.disabled = true;
  EXPECT_EQ(off.chi(0.0), 1.0);
  EXPECT_EQ(w.chi(0.0), 0.0);
  EXPECT_EQ(w.chi(1.0), 1.0);
  EXPECT_EQ(w.chi(4.6), 0.0);
  gi::IntegralWindow bad;
  bad.A = 0.5;
  EXPECT_THROW(bad.validate(), genloc::ParameterError);
}

TEST(KernelTransform, ChiTransformMatchesQuadrature) {
  gi::IntegralWindow w;
  for (double rho : {0.0, 0.8, 5.0, 31.0}) {
    const double ref = piecewise([&](double t) { return w.chi(t) * t * std::cyl_bessel_j(0.0, t * rho); },
                                 0.0, 3 * w.A, 0.05);
    EXPECT_NEAR(gi::chi_transform(rho, w, 2), ref, 1e-9) << rho;
  }
}

TEST(KernelTransform, ReductionAndHankelRoutesAgree) {
  gi::IntegralWindow w;
  const gi::ChiTable table(w, 2, 300.0);
  double worst = 0.0;
  for (double lambda : {0.5, 3.0, 8.0, 20.0})
    for (double eta : {0.0, 1.0, 7.5, 16.0, 30.0}) {
      const double h = gi::windowed_kernel_transform(lambda, eta, w, 2);
      const double r = gi::windowed_kernel_transform(lambda, eta, w, 2, gi::TransformRoute::reduction, &table);
      worst = std::max(worst, std::abs(h - r));
    }
  RecordProperty("worst_abs", std::to_string(worst));
  EXPECT_LT(worst, 1e-8);
  EXPECT_EQ(gi::windowed_kernel_transform(0.0, 3.0, w, 2), 0.0);
  EXPECT_THROW(gi::windowed_kernel_transform(1.0, 1.0, w, 2, gi::TransformRoute::reduction),
               genloc::DependencyError);
}

TEST(KernelTransform, LambdaEnergyMatchesDirectQuadrature) {
  gi::IntegralWindow w;
  const double eta = 5.0;
  const double big = 6.0;
  auto e = [&](double lam) { return gi::windowed_kernel_transform(lam, eta, w, 2); };
  const double ref0 = fixed_gauss([&](double lam) { return e(lam) * e(lam); }, 0.0, big, 0.5);
  EXPECT_NEAR(gi::lambda_energy(eta, big, 0, w, 2), ref0, 1e-8 * std::max(1.0, ref0));
  auto de = [&](double lam) { return (e(lam + 1e-4) - e(std::max(0.0, lam - 1e-4))) / (lam > 1e-4 ? 2e-4 : 1e-4 + lam); };
  const double ref1 = fixed_gauss([&](double lam) { return de(lam) * de(lam); }, 0.0, big, 0.5);
  EXPECT_NEAR(gi::lambda_energy(eta, big, 1, w, 2), ref1, 1e-4 * std::max(1.0, ref1));
  EXPECT_THROW(gi::lambda_energy(eta, big, 2, w, 2), genloc::ParameterError);
}

TEST(Riesz, OrderZeroIsThePartialIntegral) {
  const auto f = annulus_field(0.04);
  const auto e = gi::partial_integral(f, 9.0, kInner);
  const auto r = gi::riesz_mean(f, 0.0, 9.0, kInner);
  for (std::size_t p = 0; p < kInner.size(); ++p) EXPECT_LT(std::abs(e[p] - r[p]), 1e-6);
}

TEST(Riesz, SpaceRouteMatchesFrequencyOracle) {
  const auto f = annulus_field(0.05);
  const double lambda = 6.0;
  const double s = 1.0;
  const auto got = gi::riesz_mean(f, s, lambda, kInner);
  // Direct trapezoid transform and polar sum, written out here.
  const int nphi = 96;
  for (std::size_t p = 0; p < 2; ++p) {
    const auto& x = kInner[p];
    auto radial = [&](double rho) {
      cplx acc = 0.0;
      for (int k = 0; k < nphi; ++k) {
        const double phi = 2 * kPi * k / nphi;
        const double xi[2] = {rho * std::cos(phi), rho * std::sin(phi)};
        cplx fh = 0.0;
        for (std::size_t i = 0; i < f.count(); ++i) {
          const auto y = f.node(i);
          fh += f.value(i) * std::polar(1.0, -(y[0] * xi[0] + y[1] * xi[1]));
        }
        acc += fh * std::polar(1.0, x[0] * xi[0] + x[1] * xi[1]);
      }
      return acc * (0.05 * 0.05 / (2 * kPi)) * (2 * kPi / nphi) * rho * gi::riesz_multiplier(rho, lambda, s);
    };
    const double re = piecewise([&](double rho) { return radial(rho).real(); }, 0.0, lambda, 1.0) / (2 * kPi);
    EXPECT_NEAR(got[p].real(), re, 1e-6 * std::max(1.0, std::abs(re))) << p;
    EXPECT_LT(std::abs(got[p].imag()), 1e-10);
  }
}

TEST(Riesz, DeltaClosedFormsAndRoutes) {
  const double origin[2] = {0.0, 0.0};
  for (double s : {0.0, 0.3, 1.0, 2.5})
    for (double lambda : {1.0, 8.0}) {
      gi::RieszSpec spec;
      spec.s = s;
      EXPECT_NEAR(gi::riesz_mean_delta(spec, lambda, origin).real(), lambda * lambda / (4 * kPi * (s + 1)),
                  1e-10 * lambda * lambda);
    }
  // Radial quadrature against the closed-form kernel off the origin.
  const double x[2] = {0.6, -0.8};
  for (double s : {0.0, 0.5, 2.0})
    for (double lambda : {3.0, 25.0}) {
      gi::RieszSpec spec;
      spec.s = s;
      EXPECT_NEAR(gi::riesz_mean_delta(spec, lambda, x).real(), gi::riesz_kernel(1.0, lambda, s, 2), 1e-9);
    }
  // Non-integral order against an endpoint-aware oracle.
  gi::RieszSpec frac;
  frac.s = 0.3;
  boost::math::quadrature::tanh_sinh<double> ts;
  const double lam = 10.0;
  const double ref = ts.integrate([&](double t) { return gi::riesz_multiplier(t, lam, 0.3) * t * std::cyl_bessel_j(0.0, t); },
                                  0.0, lam) / (2 * kPi);
  EXPECT_NEAR(gi::riesz_mean_delta(frac, lam, x).real(), ref, 1e-8);
  // d/dx1 of the radial kernel.
  gi::RieszSpec d1;
  d1.s = 1.0;
  d1.alpha = {1, 0};
  const double step = 1e-5;
  for (double lambda : {4.0, 15.0}) {
    const double fd = (gi::riesz_kernel(std::hypot(0.6 + step, 0.8), lambda, 1.0, 2) -
                       gi::riesz_kernel(std::hypot(0.6 - step, 0.8), lambda, 1.0, 2)) / (2 * step);
    const cplx got = gi::riesz_mean_delta(d1, lambda, x);
    EXPECT_NEAR(got.real(), fd, 1e-6 * std::max(1.0, std::abs(fd))) << lambda;
    EXPECT_LT(std::abs(got.imag()), 1e-9);
  }
  gi::RieszSpec neg;
  neg.s = -0.5;
  EXPECT_THROW(gi::riesz_mean_delta(neg, 2.0, x), genloc::ParameterError);
  neg.probe = true;
  EXPECT_NO_THROW(gi::riesz_mean_delta(neg, 2.0, x));
  EXPECT_EQ(gi::riesz_mean_delta(frac, 0.0, x), cplx(0.0));
}

TEST(Riesz, ThresholdProbes) {
  const double x[2] = {0.5, 0.0};
  gi::RieszSpec smooth;
  smooth.s = 2.0;
  const auto a = gi::threshold_probe(smooth, x, 4.0, 1.5, 10, 16);
  EXPECT_EQ(a.fit.trend, gi::Trend::decaying) << a.fit.slope;
  gi::RieszSpec rough;
  rough.s = 0.0;
  const auto b = gi::threshold_probe(rough, x, 4.0, 1.5, 10, 16);
  EXPECT_NE(b.fit.trend, gi::Trend::decaying) << b.fit.slope;
  EXPECT_THROW(gi::threshold_probe(rough, std::vector<double>{0.0, 0.0}, 4.0, 1.5, 10), genloc::PreconditionError);
  EXPECT_EQ(smooth.threshold(2), 1.0);
  gi::RieszSpec d;
  d.alpha = {1, 2};
  EXPECT_EQ(d.threshold(2), 4.0);
}

TEST(Riesz, TrendCalibration) {
  std::vector<double> l;
  for (int i = 0; i < 12; ++i) l.push_back(2.0 * std::pow(1.4, i));
  auto fit = [&](double power) {
    std::vector<double> v;
    for (double t : l) v.push_back(3.0 * std::pow(t, power) * (1.0 + 0.1 * std::sin(t)));
    return gi::classify_trend(l, v);
  };
  const auto dec = fit(-1.0);
  EXPECT_EQ(dec.trend, gi::Trend::decaying);
  EXPECT_NEAR(dec.slope, -1.0, 0.05);
  EXPECT_EQ(fit(0.0).trend, gi::Trend::bounded_oscillating);
  EXPECT_EQ(fit(1.0).trend, gi::Trend::growing);
  EXPECT_EQ(gi::to_string(gi::Trend::bounded_oscillating), "bounded-oscillating");
  const std::vector<double> one{1.0};
  EXPECT_THROW(gi::classify_trend(one, one), genloc::InputError);
}

TEST(EllipticIntegral, SphereAndRefinement) {
  const auto f = gi::CompactField::sample(2, 0.06, 1.2, 1.5, bump);
  gi::FrequencyRule coarse;
  coarse.radial_panels = 12;
  coarse.angular = 96;
  const auto sph = gi::elliptic_partial_integral(f, genloc::HomogeneousPolynomial::squared_norm(2), 25.0, kInner, coarse);
  const auto ball = gi::partial_integral_spectral(f, 5.0, kInner, coarse);
  for (std::size_t p = 0; p < kInner.size(); ++p) EXPECT_LT(std::abs(sph[p] - ball[p]), 1e-12);

  const auto quartic = genloc::HomogeneousPolynomial::parse("x1^4 + x2^4", 2);
  gi::FrequencyRule fine = coarse;
  fine.radial_panels = 24;
  fine.angular = 192;
  const auto c = gi::elliptic_partial_integral(f, quartic, 400.0, kInner, coarse);
  const auto r = gi::elliptic_partial_integral(f, quartic, 400.0, kInner, fine);
  for (std::size_t p = 0; p < kInner.size(); ++p) EXPECT_LT(std::abs(c[p] - r[p]), 1e-3);
  EXPECT_THROW(gi::elliptic_partial_integral(f, genloc::HomogeneousPolynomial::parse("x1^2 - x2^2", 2), 4.0, kInner),
               genloc::NotEllipticError);
}

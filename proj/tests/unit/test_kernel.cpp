#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "genloc/errors.hpp"
#include "genloc/kernel.hpp"
#include "genloc/special.hpp"
#include "lattice_oracle.hpp"

namespace gk = genloc::kernel;
namespace gl = genloc::lattice;
using gk::cplx;

namespace {

constexpr double kPi = std::numbers::pi;

gk::WindowSpec spec2(double R = 1.0, double r = 0.5) {
  gk::WindowSpec s;
  s.R = R;
  s.r = r;
  s.dim = 2;
  return s;
}

const gk::PeriodizedWindow& window256() {
  static const auto w = gk::build_window(spec2(), 256);
  return w;
}

}  // namespace

TEST(WindowSpec, Validation) {
  EXPECT_NO_THROW(spec2().validate());
  EXPECT_THROW(spec2(0.5, 0.5).validate(), genloc::ParameterError);
  EXPECT_THROW(spec2(1.2, 0.5).validate(), genloc::ParameterError);
  EXPECT_THROW(spec2(0.8, 0.0).validate(), genloc::ParameterError);
  EXPECT_NEAR(spec2().t1(), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(spec2().t2(), 1.0 / 3.0, 1e-15);
}

TEST(Window, ProfileShape) {
  const auto s = spec2(0.9, 0.1);
  const double origin[2] = {0.0, 0.0};
  EXPECT_EQ(gk::window_value(s, origin), 0.0);
  for (double rad : {s.t2() + 1e-12, 0.6, 1.0, 2.0, 3.0}) {
    const double x[2] = {rad / std::sqrt(2.0), rad / std::sqrt(2.0)};
    EXPECT_EQ(gk::window_value(s, x), 1.0) << rad;
  }
  for (double t = 0; t < 1; t += 0.01) EXPECT_NEAR(gk::phi1(s, t) + gk::phi2(s, t), 1.0, 1e-15);
  // Periodic and radial inside the cell.
  const double a[2] = {0.2, 0.1};
  const double b[2] = {0.2 + 2 * kPi, 0.1 - 4 * kPi};
  const double c[2] = {-0.1, 0.2};
  EXPECT_EQ(gk::window_value(s, a), gk::window_value(s, b));
  EXPECT_NEAR(gk::window_value(s, a), gk::window_value(s, c), 1e-15);
}

TEST(Window, GridValidation) {
  EXPECT_THROW(gk::build_window(spec2(), 32), genloc::ParameterError);
  EXPECT_THROW(gk::build_window(spec2(), 96), genloc::ParameterError);
  EXPECT_THROW(gk::build_window(spec2(0.5, 0.49), 64), genloc::ResolutionError);
}

TEST(Window, MeanCoefficientMatchesRadialQuadrature) {
  // psi_0 = 1 - (2 pi)^-2 * 2 pi * int_0^{t2} phi_1(rho) rho d rho.
  const auto s = spec2();
  const double bump = genloc::quad::integrate(
      [&](double rho) { return gk::phi1(s, rho) * rho; }, 0.0, s.t2(), 64, 20);
  const double oracle = 1.0 - bump / (2.0 * kPi);
  const gl::Coord zero[2] = {0, 0};
  const double coarse = window256().coeff(zero);
  const double fine = gk::build_window(s, 1024).coeff(zero);
  EXPECT_NEAR(fine, oracle, 1e-11);
  EXPECT_NEAR(coarse, oracle, 1e-6);
  EXPECT_LE(std::abs(fine - oracle), std::abs(coarse - oracle) + 1e-15);
}

TEST(Window, CoefficientsRealEvenAndConverged) {
  const auto& w = window256();
  EXPECT_LT(w.max_imaginary(), 1e-14);
  const gl::Coord m[2] = {7, -3};
  const gl::Coord mneg[2] = {-7, 3};
  const gl::Coord mswap[2] = {3, 7};
  EXPECT_NEAR(w.coeff(m), w.coeff(mneg), 1e-16);
  EXPECT_NEAR(w.coeff(m), w.coeff(mswap), 1e-16);

  const auto w2 = gk::build_window(spec2(), 512);
  for (int q : {2, 4, 6}) EXPECT_GT(w.decay_constant(q), 0.0);
  // Same index range on both grids: only the quadrature differs.
  const double c4 = w.decay_constant(4, 64);
  const double c4_fine = w2.decay_constant(4, 64);
  EXPECT_LT(std::abs(c4_fine - c4) / c4, 0.10);
  // Aliasing error shrinks quickly with M: ~1e-7 at 256, ~1e-11 at 1024.
  const auto w3 = gk::build_window(spec2(), 1024);
  const auto w4 = gk::build_window(spec2(), 2048);
  for (gl::Coord a = -64; a <= 64; a += 8) {
    const gl::Coord mm[2] = {a, a / 2};
    EXPECT_NEAR(w.coeff(mm), w2.coeff(mm), 5e-7);
    EXPECT_NEAR(w3.coeff(mm), w4.coeff(mm), 1e-11);
  }
  EXPECT_GT(w.truncation_bound(), 0.0);
  const gl::Coord outside[2] = {129, 0};
  EXPECT_EQ(w.coeff(outside), 0.0);
}

TEST(KernelCoeffs, IdentityWindowReducesToDirichletCoefficients) {
  const auto w = gk::build_window(gk::WindowSpec::unit(2), 64);
  const auto kc = gk::KernelCoeffs::build(w, 30, 6);
  const double norm = 1.0 / (4 * kPi * kPi);
  for (const auto& n : kc.points()) {
    for (gl::Coord j = 0; j <= 31; ++j) {
      const cplx t = gk::theta_coeff(kc, j, n);
      EXPECT_EQ(t, cplx(n.norm_sq() < j ? norm : 0.0, 0.0));
      if (j <= 30) {
        EXPECT_EQ(gk::big_theta_coeff(kc, j, n), cplx(n.norm_sq() == j ? norm : 0.0, 0.0));
      }
    }
  }
}

TEST(KernelCoeffs, ZeroThetaAndEmptyShell) {
  const auto kc = gk::KernelCoeffs::build(window256(), 50, 10);
  for (const auto& n : kc.points()) {
    EXPECT_EQ(gk::theta_coeff(kc, 0, n), cplx(0.0, 0.0));
    EXPECT_EQ(gk::big_theta_coeff(kc, 7, n), cplx(0.0, 0.0));
  }
}

TEST(KernelCoeffs, TelescopingIsExact) {
  const auto kc = gk::KernelCoeffs::build(window256(), 169, 24, 2);
  double scale = 0.0;
  double worst = 0.0;
  for (std::size_t row = 0; row < kc.rows(); ++row) {
    const auto th = kc.theta_row(row);
    const auto bt = kc.big_theta_row(row);
    for (std::size_t j = 0; j + 1 < th.size(); ++j) {
      scale = std::max(scale, std::abs(th[j + 1]));
      worst = std::max(worst, std::abs(th[j + 1] - th[j] - bt[j]));
    }
  }
  EXPECT_LT(worst, 1e-12 * scale);
}

TEST(KernelCoeffs, MatchesDenseBallSum) {
  // (theta_j)_n = (2 pi)^-2 sum_{|m|^2 < j} psi_{n-m}, and
  // (Theta_j)_n = (2 pi)^-2 sum_{|m-n|^2 = j} psi_m, both by cube scan.
  const auto& w = window256();
  const auto kc = gk::KernelCoeffs::build(w, 120, 20);
  const double norm = 1.0 / (4 * kPi * kPi);
  for (const gl::LatticePoint& n : {gl::LatticePoint{0, 0}, gl::LatticePoint{20, 0},
                                    gl::LatticePoint{-7, 11}, gl::LatticePoint{3, 3}}) {
    for (gl::Coord j : {1, 2, 50, 100, 121}) {
      double dense = 0.0;
      genloc::testing::cube_scan(2, 12, [&](const genloc::testing::Vec& m) {
        if (genloc::testing::sq(m) < j) {
          const gl::Coord d[2] = {n[0] - m[0], n[1] - m[1]};
          dense += w.coeff(d);
        }
      });
      EXPECT_NEAR(gk::theta_coeff(kc, j, n).real(), norm * dense, 1e-15) << "j=" << j;
      if (j <= 120) {
        double shell = 0.0;
        genloc::testing::cube_scan(2, 40, [&](const genloc::testing::Vec& m) {
          const gl::Coord d[2] = {m[0] - n[0], m[1] - n[1]};
          if (d[0] * d[0] + d[1] * d[1] == j) shell += w.coeff(std::span<const gl::Coord>(m));
        });
        EXPECT_NEAR(gk::big_theta_coeff(kc, j, n).real(), norm * shell, 1e-15);
      }
    }
  }
}

TEST(KernelCoeffs, MatchesProductTransformOnFineGrid) {
  // Independent route: coefficients of theta(x, j) psi(x) by a direct DFT of
  // grid samples on a 512^2 grid.
  const auto s = spec2();
  const gl::Coord j = 100;
  const auto kc = gk::KernelCoeffs::build(gk::build_window(s, 1024), j, 24);
  const int M = 512;
  const auto ball = gl::enumerate_ball(static_cast<double>(j), 2);
  std::vector<double> samples(static_cast<std::size_t>(M) * M);
  for (int a = 0; a < M; ++a) {
    for (int b = 0; b < M; ++b) {
      const double x[2] = {2 * kPi * a / M - kPi, 2 * kPi * b / M - kPi};
      double theta = 0.0;
      for (const auto& m : ball) theta += std::cos(m[0] * x[0] + m[1] * x[1]);
      samples[static_cast<std::size_t>(a) * M + b] =
          theta / (4 * kPi * kPi) * gk::window_value(s, x);
    }
  }
  for (const gl::LatticePoint& n : {gl::LatticePoint{20, 0}, gl::LatticePoint{0, 0},
                                    gl::LatticePoint{10, 0}, gl::LatticePoint{6, -8},
                                    gl::LatticePoint{17, 12}}) {
    cplx acc{};
    for (int a = 0; a < M; ++a) {
      for (int b = 0; b < M; ++b) {
        const double x0 = 2 * kPi * a / M - kPi;
        const double x1 = 2 * kPi * b / M - kPi;
        const double ph = -(n[0] * x0 + n[1] * x1);
        acc += samples[static_cast<std::size_t>(a) * M + b] * cplx(std::cos(ph), std::sin(ph));
      }
    }
    acc /= static_cast<double>(M) * M;
    EXPECT_NEAR(gk::theta_coeff(kc, j, n).real(), acc.real(), 1e-9) << n[0] << "," << n[1];
    EXPECT_NEAR(acc.imag(), 0.0, 1e-12);
  }
}

TEST(KernelCoeffs, DecayEnvelopeAtDocumentedPoint) {
  // Fit C_4 = max |theta_j|_n (1 + ||n| - sqrt j|)^4 on j <= 169, |n| <= 24 and
  // check the documented point sits under the envelope.
  const auto kc = gk::KernelCoeffs::build(window256(), 169, 24);
  double c4 = 0.0;
  for (std::size_t row = 0; row < kc.rows(); ++row) {
    const double nn = std::sqrt(static_cast<double>(kc.points()[row].norm_sq()));
    const auto th = kc.theta_row(row);
    for (std::size_t j = 0; j <= 169; ++j)
      c4 = std::max(c4, std::abs(th[j]) * std::pow(1.0 + std::abs(nn - std::sqrt(j)), 4));
  }
  const double v = std::abs(gk::theta_coeff(kc, 100, gl::LatticePoint{20, 0}));
  EXPECT_LE(v, c4 / std::pow(11.0, 4));
  EXPECT_GT(v, 0.0);
}

TEST(KernelCoeffs, RangeChecksAndDeterminism) {
  EXPECT_THROW(gk::KernelCoeffs::build(window256(), 900, 100), genloc::RangeError);
  const auto a = gk::KernelCoeffs::build(window256(), 80, 12, 1);
  const auto b = gk::KernelCoeffs::build(window256(), 80, 12, 3);
  for (std::size_t row = 0; row < a.rows(); ++row) {
    const auto x = a.theta_row(row);
    const auto y = b.theta_row(row);
    for (std::size_t j = 0; j < x.size(); ++j) ASSERT_EQ(x[j], y[j]);
  }
  EXPECT_THROW(gk::theta_coeff(a, 82, gl::LatticePoint{0, 0}), genloc::RangeError);
  EXPECT_THROW(gk::theta_coeff(a, 5, gl::LatticePoint{12, 1}), genloc::RangeError);
  EXPECT_THROW(gk::big_theta_coeff(a, 81, gl::LatticePoint{0, 0}), genloc::RangeError);
  EXPECT_NO_THROW(gk::theta_coeff(a, 81, gl::LatticePoint{12, 0}));
}

TEST(DirichletKernel, DocumentedValues) {
  const double norm = 1.0 / (4 * kPi * kPi);
  const double x[2] = {0.3, -1.1};
  EXPECT_NEAR(std::abs(gk::dirichlet_kernel(x, 0.5) - cplx(norm, 0)), 0.0, 1e-17);
  const double origin[2] = {0.0, 0.0};
  EXPECT_NEAR(gk::dirichlet_kernel(origin, 10).real(), 29 * norm, 1e-14);

  const double p[2] = {kPi / 3, 0.0};
  double oracle = 0.0;
  int count = 0;
  genloc::testing::cube_scan(2, 4, [&](const genloc::testing::Vec& n) {
    if (genloc::testing::sq(n) < 10) {
      oracle += std::cos(n[0] * p[0] + n[1] * p[1]);
      ++count;
    }
  });
  ASSERT_EQ(count, 29);
  const cplx v = gk::dirichlet_kernel(p, 10);
  EXPECT_NEAR(v.real(), oracle * norm, 1e-15);
  EXPECT_LT(std::abs(v.imag()), 1e-10 * 29);
  EXPECT_THROW(gk::dirichlet_kernel(p, 1e13), genloc::ResourceError);
}

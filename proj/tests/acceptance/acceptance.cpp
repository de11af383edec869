// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "genloc/integral.hpp"
#include "genloc/parallel.hpp"
#include "genloc/verification.hpp"

namespace gv = genloc::verify;
namespace gi = genloc::integral;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void line(const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s  %-44s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double metric(const gv::VerificationReport& r, const std::string& key) {
  auto it = r.metrics.find(key);
  return it == r.metrics.end() ? NAN : it->second;
}

std::string growths(const gv::VerificationReport& r) {
  std::string s;
  for (const auto& c : r.constants) s += (s.empty() ? "" : " ") + c.name + "=" + fmt("%.3f", c.growth);
  return "growth " + s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// (2 pi)^{-N} int_{|xi|<lambda} e^{ix xi} d xi as a radial Gauss-Kronrod
// integral, in unit pieces.
double ball_oracle(double r, double lambda, int dim) {
  std::function<double(double)> f;
  double scale = 0.0;
  if (dim == 1) {
    f = [&](double t) { return std::cos(t * r); };
    scale = 2.0 / (2.0 * kPi);
  } else if (dim == 2) {
    f = [&](double t) { return t * std::cyl_bessel_j(0.0, t * r); };
    scale = 1.0 / (2.0 * kPi);
  } else {
    f = [&](double t) { return r == 0.0 ? t * t : t * std::sin(t * r) / r; };
    scale = 4.0 * kPi / std::pow(2.0 * kPi, 3);
  }
  const int n = static_cast<int>(std::ceil(lambda / 0.5));
  const double w = lambda / n;
  double s = 0.0;
  for (int k = 0; k < n; ++k)
    s += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, k * w, (k + 1) * w, 8, 1e-14);
  return scale * s;
}

double bump(std::span<const double> y) {
  const double u = (std::hypot(y[0], y[1]) - 1.25) / 0.25;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u)) * (1.0 + 0.5 * y[0]);
}

}  // namespace

int main() {
  gv::ScanRange range;
  range.threads = genloc::default_threads();
  gv::Campaign campaign(range);

  std::printf("# exact identities\n");
  {
    const auto r = campaign.run("telescoping");
    const double res = std::max(metric(r, "residual_base"), metric(r, "residual_doubled"));
    line("telescoping (theta_{j+1}-theta_j = Theta_j)", r.pass && res < 1e-12, fmt("max residual %.2e (< 1e-12)", res));
  }
  {
    const auto r = campaign.run("W2-identity");
    const double res = std::max(metric(r, "residual_base"), metric(r, "residual_doubled"));
    line("W2 identity per trial", r.pass && res < 1e-8, fmt("max relative residual %.2e (< 1e-8)", res));
  }
  {
    const auto r = campaign.run("tevzadze");
    const double res = metric(r, "residual");
    line("Tevzadze recombination, 50 fields", r.pass && res < 1e-12, fmt("max residual %.2e (< 1e-12)", res));
  }
  {
    const auto r = campaign.run("band-limit");
    const double res = metric(r, "residual");
    line("band-limited exactness", r.pass && res < 1e-10, fmt("max residual %.2e (< 1e-10)", res));
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto card = campaign.run("cardinality");
    const auto norm = campaign.run("min-norm");
    const double secs = seconds_since(t0);
    line("partition covers {0..2k}", metric(card, "cover_violations") == 0.0,
         fmt("%.0f bad (n,k)", metric(card, "cover_violations")));
    line("cardinality bound", card.pass,
         fmt("%.0f violations", metric(card, "violations")) + fmt(" (N=2: %.0f", metric(card, "violations_N2")) +
             fmt(", N=3: %.0f)", metric(card, "violations_N3")));
    line("minimum-norm bounds", norm.pass, fmt("%.0f violations", metric(norm, "violations")) +
                                               fmt(" over %.0f points", metric(norm, "checked_points")));
    line("partition suite runtime", secs < 300.0, fmt("%.1f s (< 300 s)", secs));
  }

  std::printf("# lemma stability (doubled / base < 1.5)\n");
  {
    const auto t0 = std::chrono::steady_clock::now();
    for (const char* id : {"coef2", "bigl", "Q", "Lsmall", "LBig", "Sbigl", "W"}) {
      const auto r = campaign.run(id);
      line(std::string("stability ") + id, r.pass, growths(r));
    }
    const auto r = campaign.run("sum-bound");
    line("assembled maximal bound, every trial", r.pass,
         fmt("max lhs/rhs %.3f", std::max(metric(r, "max_lhs_over_rhs_base"), metric(r, "max_lhs_over_rhs_doubled"))));
    const double secs = seconds_since(t0);
    line("stability suite runtime", secs < 1800.0, fmt("%.1f s (< 1800 s)", secs));
  }

  std::printf("# maximal function and localization\n");
  {
    const auto r = campaign.run("MAX1-ratio");
    line("S_* ratio growth n_max 16 -> 32, 100 trials", r.pass,
         fmt("max ratio %.4f", metric(r, "max_ratio_16")) + fmt(" -> %.4f", metric(r, "max_ratio_32")) +
             fmt(", growth %.3f (< 1.2)", metric(r, "growth")));
    const auto t = campaign.run("localization-series");
    line("inner-ball trend non-increasing (10% slack)", t.pass,
         fmt("worst block step %.3f (<= 1.1)", metric(t, "worst_step_ratio")));
  }

  std::printf("# integral side\n");
  {
    double worst = 0.0;
    for (int dim : {1, 2, 3})
      for (double lambda : {1.0, 5.0, 20.0})
        for (double x : {0.1, 0.7, 2.3}) {
          const double ref = ball_oracle(x, lambda, dim);
          worst = std::max(worst, std::abs(gi::ball_kernel(x, lambda, dim) - ref) / std::abs(ref));
        }
    line("ball kernel vs quadrature, 3x3x3", worst < 1e-6, fmt("max relative error %.2e (< 1e-6)", worst));
  }
  {
    const auto r = campaign.run("ft");
    line("kernel transform decay stability", r.pass, growths(r));
    const auto e = campaign.run("INT");
    line("lambda-energy stability", e.pass,
         growths(e) + fmt(", saturation %.4f", metric(e, "saturation_max_change")));
  }
  {
    // Space route (riesz kernel with s=0) against the frequency-side
    // quadrature of the sampled field, and against the ball-kernel route.
    const auto f = gi::CompactField::sample(2, 0.04, 1.0, 1.5, bump);
    const gi::Points pts{{0.0, 0.0}, {0.3, -0.2}, {-0.1, 0.45}};
    double vs_freq = 0.0;
    double vs_space = 0.0;
    for (double lambda : {5.0, 8.0, 12.0}) {
      const auto a = gi::riesz_mean(f, 0.0, lambda, pts);
      const auto b = gi::partial_integral_spectral(f, lambda, pts);
      const auto c = gi::partial_integral(f, lambda, pts);
      double scale = 0.0;
      for (const auto& z : b) scale = std::max(scale, std::abs(z));
      for (std::size_t i = 0; i < pts.size(); ++i) {
        vs_freq = std::max(vs_freq, std::abs(a[i] - b[i]) / scale);
        vs_space = std::max(vs_space, std::abs(a[i] - c[i]) / scale);
      }
    }
    line("Riesz s=0 equals partial integral", std::max(vs_freq, vs_space) < 1e-6,
         fmt("max relative difference %.2e vs frequency route", vs_freq) + fmt(", %.2e vs space route (< 1e-6)", vs_space));
  }
  {
    const std::vector<double> x{0.5, 0.0};
    gi::RieszSpec two;
    two.s = 2.0;
    two.l = 1.5;
    gi::RieszSpec zero;
    zero.l = 1.5;
    const auto a = gi::threshold_probe(two, x, 4.0, 1.5, 12);
    const auto b = gi::threshold_probe(zero, x, 4.0, 1.5, 12);
    line("Riesz probe s=2, N=2 delta, |x|=0.5: decaying", a.fit.trend == gi::Trend::decaying,
         gi::to_string(a.fit.trend) + fmt(", slope %.3f", a.fit.slope));
    line("Riesz probe s=0, N=2 delta, |x|=0.5: not decaying", b.fit.trend != gi::Trend::decaying,
         gi::to_string(b.fit.trend) + fmt(", slope %.3f", b.fit.slope));
  }

  std::printf("# %d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

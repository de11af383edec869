#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "genloc/errors.hpp"
#include "genloc/integral.hpp"
#include "genloc/parallel.hpp"
#include "genloc/series.hpp"
#include "genloc/verification.hpp"
#include "verify_internal.hpp"

namespace genloc::verify {

namespace {

using report::cell;
using series::SpectralField;
using series::TorusGrid;

double bump(double u) { return std::abs(u) >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - u * u)); }

// Largest v[i+1] / v[i]; the trend passes when this stays below 1 + slack.
double worst_step(const std::vector<double>& v) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) worst = std::max(worst, v[i + 1] / v[i]);
  return worst;
}

std::vector<double> scan_grid(double extent) {
  std::vector<double> g;
  for (int i = 0; 0.5 * i <= extent + 1e-12; ++i) g.push_back(0.5 * i);
  return g;
}

struct DecaySup {
  std::vector<double> j0;  // per l
  std::vector<double> j1;
};

DecaySup decay_scan(const ScanRange& range, report::CsvTable* trace) {
  const auto grid = scan_grid(range.transform_extent);
  integral::IntegralWindow w;
  w.R = range.R;
  w.r = range.r;
  const std::size_t nl = range.ls.size();
  std::vector<std::vector<double>> v0(grid.size()), v1(grid.size());
  parallel_for(grid.size(), range.threads, [&](std::size_t i) {
    v0[i] = integral::kernel_transform_scan(grid[i], grid, 0, w, range.dim);
    v1[i] = integral::kernel_transform_scan(grid[i], grid, 1, w, range.dim);
  });
  DecaySup out{std::vector<double>(nl, 0.0), std::vector<double>(nl, 0.0)};
  for (std::size_t e = 0; e < grid.size(); ++e)
    for (std::size_t a = 0; a < grid.size(); ++a)
      for (std::size_t li = 0; li < nl; ++li) {
        const double wgt = std::pow(1.0 + std::abs(grid[e] - grid[a]), range.ls[li]);
        const double x0 = std::abs(v0[e][a]) * wgt;
        out.j0[li] = std::max(out.j0[li], x0);
        out.j1[li] = std::max(out.j1[li], std::abs(v1[e][a]) * wgt);
        if (trace) trace->add({cell(range.dim), cell(grid[a]), cell(grid[e]), cell(range.ls[li]), cell(x0)});
      }
  return out;
}

std::vector<double> energy_etas(double extent) {
  std::vector<double> etas;
  for (int i = 0; 4.0 * i <= extent + 1e-12; ++i) etas.push_back(4.0 * i);
  return etas;
}

std::pair<double, double> energy_sup(const ScanRange& range) {
  integral::IntegralWindow w;
  w.R = range.R;
  w.r = range.r;
  const auto etas = energy_etas(range.transform_extent);
  const double big = 2.0 * range.transform_extent + 20.0;
  std::vector<double> e0(etas.size()), e1(etas.size());
  parallel_for(etas.size(), range.threads, [&](std::size_t i) {
    e0[i] = integral::lambda_energy(etas[i], big, 0, w, range.dim);
    e1[i] = integral::lambda_energy(etas[i], big, 1, w, range.dim);
  });
  return {*std::max_element(e0.begin(), e0.end()), *std::max_element(e1.begin(), e1.end())};
}

FittedConstant make_fit(std::string name, std::string formula, double l, double base, double doubled,
                        double threshold) {
  FittedConstant c;
  c.name = std::move(name);
  c.formula = std::move(formula);
  c.l = l;
  c.base = base;
  c.doubled = doubled;
  c.growth = base > 0.0 ? doubled / base : INFINITY;
  c.pass = std::isfinite(c.growth) && c.growth < threshold;
  return c;
}

std::string alpha_text(const std::vector<int>& alpha) {
  if (alpha.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? ";" : "") + std::to_string(alpha[i]);
  return s;
}

struct Max1Result {
  std::vector<double> ratios;  // discarded trials hold NaN
  std::size_t discarded = 0;
};

Max1Result max1_trials(const SeriesLocalizationConfig& cfg, Coord nm) {
  const series::SupportProjector proj(2, nm, cfg.R);
  const TorusGrid grid(2, cfg.grid);
  const auto pts = series::ball_points(grid, cfg.r);
  const Coord lambda_max = 2 * nm * nm + 1;
  Max1Result out;
  out.ratios.assign(static_cast<std::size_t>(cfg.trials), NAN);
  std::vector<char> dropped(out.ratios.size(), 0);
  parallel_for(out.ratios.size(), cfg.threads, [&](std::size_t t) {
    std::seed_seq ss{cfg.seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(nm), std::uint64_t{0x3a}};
    std::mt19937_64 rng(ss);
    const auto f = proj.draw(rng);
    if (series::ball_fraction(f, cfg.R, grid) > 1e-6) {
      dropped[t] = 1;
      return;
    }
    const auto sup = series::maximal_sum(f, lambda_max, pts);
    double acc = 0.0;
    for (double v : sup) acc += v * v;
    out.ratios[t] = std::sqrt(acc * grid.cell_volume() / f.l2_norm_sq());
  });
  for (char d : dropped) out.discarded += static_cast<std::size_t>(d);
  return out;
}

double quantile(std::vector<double> v, double q) {
  std::erase_if(v, [](double x) { return std::isnan(x); });
  if (v.empty()) return NAN;
  std::sort(v.begin(), v.end());
  const auto i = static_cast<std::size_t>(std::floor(q * static_cast<double>(v.size() - 1)));
  return v[i];
}

}  // namespace

namespace detail {

void transform_report(VerificationReport& rep, const std::string& id, const ScanRange& range,
                      const Thresholds& th) {
  const auto dbl = range.doubled();
  if (id == "ft") {
    report::CsvTable trace;
    trace.meta = {{"kind", "decay-scan"}, {"j", "0"}, {"R", cell(range.R)}, {"r", cell(range.r)}};
    trace.columns = report::schema::decay_scan();
    const auto b = decay_scan(range, &trace);
    const auto d = decay_scan(dbl, nullptr);
    for (std::size_t li = 0; li < range.ls.size(); ++li) {
      const int l = range.ls[li];
      rep.constants.push_back(make_fit("C_" + std::to_string(l) + "_j0",
                                       "sup_{lambda,|eta| in [0,E]} |e^_lambda(eta)| (1 + ||eta| - lambda|)^l", l,
                                       b.j0[li], d.j0[li], th.growth));
      rep.constants.push_back(make_fit("C_" + std::to_string(l) + "_j1",
                                       "sup_{lambda,|eta| in [0,E]} |d/dlambda e^_lambda(eta)| (1 + ||eta| - lambda|)^l",
                                       l, b.j1[li], d.j1[li], th.growth));
    }
    rep.traces["ft_decay"] = std::move(trace);
    rep.metrics["extent_base"] = range.transform_extent;
    rep.metrics["extent_doubled"] = dbl.transform_extent;
  } else {
    const auto [b0, b1] = energy_sup(range);
    const auto [d0, d1] = energy_sup(dbl);
    rep.constants.push_back(make_fit("C_j0", "sup_{|eta| in {0,4,..,E}} int_0^{2E+20} |e^_lambda(eta)|^2 dlambda", 0,
                                     b0, d0, th.growth));
    rep.constants.push_back(make_fit(
        "C_j1", "sup_{|eta| in {0,4,..,E}} int_0^{2E+20} |d/dlambda e^_lambda(eta)|^2 dlambda", 0, b1, d1, th.growth));
    // Saturation: Lambda = 2E + 20 >= 2|eta| + 20 for every scanned eta.
    integral::IntegralWindow w;
    w.R = range.R;
    w.r = range.r;
    const double big = 2.0 * range.transform_extent + 20.0;
    double worst = 0.0;
    for (double eta : {0.0, range.transform_extent})
      for (int j : {0, 1}) {
        const double a = integral::lambda_energy(eta, big, j, w, range.dim);
        const double c = integral::lambda_energy(eta, 2.0 * big, j, w, range.dim);
        worst = std::max(worst, std::abs(c - a) / c);
      }
    rep.metrics["saturation_max_change"] = worst;
    rep.metrics["saturation_threshold"] = th.saturation;
    rep.pass = rep.pass && worst < th.saturation;
  }
  for (const auto& c : rep.constants) rep.pass = rep.pass && c.pass;
}

void max1_ratio(VerificationReport& rep, const SeriesLocalizationConfig& cfg, const Thresholds& th) {
  if (cfg.trials < 1) throw ParameterError("trials must be >= 1");
  report::CsvTable trace;
  trace.meta = {{"kind", "ratio"}, {"R", cell(cfg.R)}, {"r", cell(cfg.r)}, {"M", cell(cfg.grid)},
                {"seed", cell(static_cast<std::int64_t>(cfg.seed))}};
  trace.columns = report::schema::ratio();
  double maxes[2] = {0.0, 0.0};
  const Coord sizes[2] = {cfg.n_max_base, cfg.n_max_doubled};
  for (int s = 0; s < 2; ++s) {
    const auto res = max1_trials(cfg, sizes[s]);
    for (std::size_t t = 0; t < res.ratios.size(); ++t) {
      if (std::isnan(res.ratios[t])) continue;
      maxes[s] = std::max(maxes[s], res.ratios[t]);
      trace.add({cell(t), cell(sizes[s]), cell(res.ratios[t])});
    }
    const std::string tag = std::to_string(sizes[s]);
    rep.metrics["max_ratio_" + tag] = maxes[s];
    rep.metrics["median_ratio_" + tag] = quantile(res.ratios, 0.5);
    rep.metrics["p90_ratio_" + tag] = quantile(res.ratios, 0.9);
    rep.metrics["discarded_" + tag] = static_cast<double>(res.discarded);
    if (res.discarded > 0)
      rep.notes.push_back(std::to_string(res.discarded) + " trials at n_max=" + tag +
                          " discarded: support projection above 1e-6 on the ball");
  }
  const double growth = maxes[1] / maxes[0];
  rep.metrics["growth"] = growth;
  rep.metrics["growth_threshold"] = th.ratio_growth;
  rep.metrics["trials"] = cfg.trials;

  // f = 0 gives ratio 0; the maximal sum itself must vanish.
  const TorusGrid grid(2, cfg.grid);
  double zero = 0.0;
  for (double v : series::maximal_sum(SpectralField(2, cfg.n_max_base), 2 * cfg.n_max_base * cfg.n_max_base + 1,
                                      series::ball_points(grid, cfg.r)))
    zero = std::max(zero, v);
  rep.metrics["zero_field_max"] = zero;

  // Same seed, same bits.
  SeriesLocalizationConfig one = cfg;
  one.trials = 1;
  const auto a = max1_trials(one, cfg.n_max_base).ratios[0];
  const auto b = max1_trials(one, cfg.n_max_base).ratios[0];
  rep.metrics["rerun_identical"] = (a == b || (std::isnan(a) && std::isnan(b))) ? 1.0 : 0.0;

  rep.traces["max1_ratio"] = std::move(trace);
  rep.pass = rep.pass && growth < th.ratio_growth && zero == 0.0 && rep.metrics["rerun_identical"] == 1.0;
}

void series_trend(VerificationReport& rep, const SeriesLocalizationConfig& cfg, const Thresholds& th) {
  const auto& edges = cfg.trend_lambdas;
  if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end()) || !(edges.front() > 0.0))
    throw ParameterError("trend lambdas need two or more ascending positive values");
  const TorusGrid grid(2, 512);
  const Coord band = 255;
  report::CsvTable trace;
  trace.meta = {{"kind", "trajectory"}, {"side", "series"}, {"R", cell(cfg.R)}, {"r", cell(cfg.r)}};
  trace.columns = report::schema::trajectory();
  const auto pts = series::ball_points(grid, cfg.r);
  // S_lambda changes only at integers, so the block start plus every integer
  // inside the block covers [edges[i], edges[i+1]) exactly.
  std::vector<double> lambdas;
  std::vector<std::size_t> block_of;
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    lambdas.push_back(edges[b]);
    block_of.push_back(b);
    for (double l = std::floor(edges[b]) + 1.0; l < edges[b + 1]; l += 1.0) {
      lambdas.push_back(l);
      block_of.push_back(b);
    }
  }
  struct Fixture {
    const char* name;
    double (*fn)(double, double);
  };
  // Radial and non-radial smooth bumps on 1.2 <= |x| <= 2.8.
  const Fixture fixtures[] = {
      {"radial-bump", [](double x1, double x2) { return bump((std::hypot(x1, x2) - 2.0) / 0.8); }},
      {"modulated-bump",
       [](double x1, double x2) {
         return bump((std::hypot(x1, x2) - 2.0) / 0.8) * (1.0 + 0.5 * std::cos(x1) + 0.3 * std::sin(2.0 * x2));
       }},
  };
  double worst = 0.0;
  for (const auto& fx : fixtures) {
    series::GridField samples(grid);
    std::vector<double> x(2);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid.point(i, x);
      samples.values[i] = fx.fn(x[0], x[1]);
    }
    const auto values = series::sum_trajectory(series::analyze(samples, band), lambdas, pts);
    std::vector<double> sup(edges.size() - 1, 0.0);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      double m = 0.0;
      for (const auto& v : values[i]) m = std::max(m, std::abs(v));
      sup[block_of[i]] = std::max(sup[block_of[i]], m);
      trace.add({fx.name, cell(lambdas[i]), cell(m)});
      for (double e : edges)
        if (lambdas[i] == e) rep.metrics[std::string("point_max_") + fx.name + "_" + cell(e)] = m;
    }
    for (std::size_t b = 0; b < sup.size(); ++b)
      rep.metrics[std::string("block_sup_") + fx.name + "_" + cell(edges[b])] = sup[b];
    worst = std::max(worst, worst_step(sup));
  }
  rep.metrics["worst_step_ratio"] = worst;
  rep.metrics["slack"] = th.trend_slack;
  rep.traces["series_trajectory"] = std::move(trace);
  rep.pass = rep.pass && worst <= 1.0 + th.trend_slack;
}

}  // namespace detail

VerificationReport run_localization_series(const SeriesLocalizationConfig& config, const Thresholds& thresholds) {
  VerificationReport rep;
  rep.lemma = "localization-series";
  rep.pass = true;
  detail::max1_ratio(rep, config, thresholds);
  detail::series_trend(rep, config, thresholds);
  return rep;
}

VerificationReport run_localization_integral(const IntegralLocalizationConfig& cfg, const Thresholds& th) {
  VerificationReport rep;
  rep.lemma = "localization-integral";
  rep.pass = true;
  const auto& edges = cfg.lambdas;
  if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end()) || !(edges.front() > 0.0))
    throw ParameterError("lambdas need two or more ascending positive values");
  if (cfg.block_samples < 1) throw ParameterError("block samples must be >= 1");
  integral::IntegralWindow window;
  window.R = cfg.R;
  window.r = cfg.r;
  window.A = cfg.A;
  window.validate();
  const double mid = 0.5 * (cfg.R + cfg.A);
  const double half = 0.5 * (cfg.A - cfg.R);
  auto fn = [&](std::span<const double> y) { return bump((std::hypot(y[0], y[1]) - mid) / half) * (1.0 + 0.5 * y[0]); };

  // Origin plus four rings of 16 points inside |x| <= r.
  integral::Points pts{{0.0, 0.0}};
  for (int ring = 1; ring <= 4; ++ring)
    for (int a = 0; a < 16; ++a) {
      const double rad = cfg.r * ring / 4.0;
      const double phi = 2.0 * std::numbers::pi * a / 16.0;
      pts.push_back({rad * std::cos(phi), rad * std::sin(phi)});
    }
  const integral::Points few(pts.begin(), pts.begin() + 17);
  report::CsvTable trace;
  trace.meta = {{"kind", "trajectory"}, {"side", "integral"}, {"R", cell(cfg.R)}, {"r", cell(cfg.r)}, {"A", cell(cfg.A)}};
  trace.columns = report::schema::trajectory();
  std::vector<double> sup(edges.size() - 1, 0.0);
  double window_diff = 0.0;
  for (std::size_t b = 0; b + 1 < edges.size(); ++b)
    for (int s = 0; s < cfg.block_samples; ++s) {
      // Geometric nodes in [edges[b], edges[b+1]); each sample gets h = 0.5 / lambda.
      const double lambda = edges[b] * std::pow(edges[b + 1] / edges[b], static_cast<double>(s) / cfg.block_samples);
      const auto f = integral::CompactField::sample(2, 0.5 / lambda, cfg.R, cfg.A, fn);
      const auto v = integral::partial_integral(f, lambda, pts, nullptr, cfg.threads);
      double m = 0.0;
      for (const auto& z : v) m = std::max(m, std::abs(z));
      sup[b] = std::max(sup[b], m);
      trace.add({"bump", cell(lambda), cell(m)});
      if (s == 0) rep.metrics["point_max_" + cell(lambda)] = m;
      if ((b == 0 && s == 0) || (b + 2 == edges.size() && s + 1 == cfg.block_samples)) {
        const auto a = integral::partial_integral(f, lambda, few, &window, cfg.threads);
        for (std::size_t p = 0; p < few.size(); ++p) window_diff = std::max(window_diff, std::abs(a[p] - v[p]));
      }
    }
  for (std::size_t b = 0; b < sup.size(); ++b) rep.metrics["block_sup_" + cell(edges[b])] = sup[b];
  const auto zero = integral::partial_integral(integral::CompactField::zero(2, 0.5 / edges.front(), cfg.R, cfg.A),
                                               edges.front(), pts, nullptr, cfg.threads);
  double zmax = 0.0;
  for (const auto& z : zero) zmax = std::max(zmax, std::abs(z));
  const double worst = worst_step(sup);
  rep.metrics["worst_step_ratio"] = worst;
  rep.metrics["slack"] = th.trend_slack;
  rep.metrics["window_max_diff"] = window_diff;
  rep.metrics["zero_field_max"] = zmax;
  rep.traces["integral_trajectory"] = std::move(trace);
  rep.pass = worst <= 1.0 + th.trend_slack && window_diff < 1e-6 && zmax == 0.0;
  return rep;
}

VerificationReport run_riesz_thresholds(const RieszThresholdConfig& cfg) {
  VerificationReport rep;
  rep.lemma = "riesz-threshold";
  rep.pass = true;
  if (cfg.dim < 1 || !(cfg.x_norm > 0.0)) throw ParameterError("probe needs N >= 1 and |x| > 0");
  std::vector<double> x(static_cast<std::size_t>(cfg.dim), 0.0);
  x[0] = cfg.x_norm;
  report::CsvTable trace;
  trace.meta = {{"kind", "threshold-envelope"}};
  trace.columns = report::schema::riesz_probe(cfg.dim);
  for (const auto& ps : cfg.specs) {
    integral::RieszSpec spec;
    spec.s = ps.s;
    spec.l = ps.l;
    spec.alpha = ps.alpha;
    const auto probe = integral::threshold_probe(spec, x, cfg.lambda0, cfg.ratio, cfg.count);
    const std::string key = "s=" + cell(ps.s) + ",alpha=" + alpha_text(ps.alpha);
    rep.metrics["slope[" + key + "]"] = probe.fit.slope;
    rep.notes.push_back(key + ",l=" + cell(ps.l) + ": " + integral::to_string(probe.fit.trend));
    for (std::size_t i = 0; i < probe.lambdas.size(); ++i) {
      std::vector<std::string> row{cell(cfg.dim), cell(ps.s), alpha_text(ps.alpha), cell(probe.lambdas[i])};
      for (double c : x) row.push_back(cell(c));
      row.push_back(cell(probe.samples[i].real()));
      row.push_back(cell(probe.samples[i].imag()));
      row.push_back(cell(probe.values[i]));
      row.push_back(cell(probe.envelope[i]));
      trace.add(std::move(row));
    }
    if (ps.s >= ps.l && probe.fit.trend != integral::Trend::decaying) rep.pass = false;
  }
  // Classifier calibration on a pure power lambda^-1.
  std::vector<double> lam, val;
  for (int i = 0; i < 12; ++i) {
    lam.push_back(cfg.lambda0 * std::pow(cfg.ratio, i));
    val.push_back(1.0 / lam.back());
  }
  const auto cal = integral::classify_trend(lam, val);
  rep.metrics["calibration_slope"] = cal.slope;
  rep.pass = rep.pass && cal.trend == integral::Trend::decaying;
  rep.traces["riesz_probe"] = std::move(trace);
  return rep;
}

}  // namespace genloc::verify

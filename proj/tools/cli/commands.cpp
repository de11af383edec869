#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "genloc/errors.hpp"
#include "genloc/integral.hpp"
#include "genloc/kernel.hpp"
#include "genloc/lattice.hpp"
#include "genloc/parallel.hpp"
#include "genloc/polynomial.hpp"
#include "genloc/report.hpp"
#include "genloc/series.hpp"
#include "genloc/verification.hpp"

namespace genloc::cli {

namespace {

namespace fs = std::filesystem;
using lattice::Coord;
using report::cell;
using report::CsvTable;

std::vector<KeySpec> with_common(std::vector<KeySpec> keys) {
  std::vector<KeySpec> out{
      {"dimension", "2", "dimension N"},
      {"seed", "7", "RNG seed"},
      {"threads", std::to_string(default_threads()), "worker threads"},
      {"output", "genloc-out", "output directory, relative to GENLOC_OUTPUT_ROOT when set"},
  };
  out.insert(out.end(), keys.begin(), keys.end());
  return out;
}

int dimension(const Settings& s) {
  const auto d = s.integer("dimension");
  if (d < 1 || d > 8) throw ConfigError("dimension must be in 1..8");
  return static_cast<int>(d);
}

int threads(const Settings& s) {
  const auto t = s.integer("threads");
  if (t < 1) throw ConfigError("threads must be >= 1");
  return static_cast<int>(t);
}

fs::path prepare(const Settings& s) {
  const auto dir = output_dir(s);
  fs::create_directories(dir);
  return dir;
}

void save(const fs::path& dir, const std::string& name, const CsvTable& t) {
  std::ofstream out(dir / name);
  if (!out) throw Error("cannot write " + (dir / name).string());
  report::write_csv(out, t);
}

void save_text(const fs::path& dir, const std::string& name, const std::string& text) {
  std::ofstream out(dir / name);
  if (!out) throw Error("cannot write " + (dir / name).string());
  out << text;
}

std::vector<std::vector<double>> probes(const Settings& s, const std::string& key, int dim) {
  auto pts = s.points(key);
  if (pts.empty()) throw ConfigError(key + " is empty");
  for (const auto& p : pts)
    if (static_cast<int>(p.size()) != dim) throw ConfigError(key + ": every point needs " + std::to_string(dim) + " coordinates");
  return pts;
}

std::vector<double> ascending(const Settings& s, const std::string& key) {
  auto v = s.reals(key);
  if (v.empty()) throw ConfigError(key + " is empty");
  if (!std::is_sorted(v.begin(), v.end())) throw ConfigError(key + " must be ascending");
  return v;
}

double bump(double u) { return std::abs(u) >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - u * u)); }

// --- lattice ----------------------------------------------------------------

int run_lattice(const Settings& s, const std::string&) {
  const int dim = dimension(s);
  const auto dir = prepare(s);
  if (s.is_set("shell")) {
    const Coord j = s.integer("shell");
    if (j < 0) throw ConfigError("shell must be >= 0");
    CsvTable t;
    t.meta = {{"N", cell(dim)}};
    t.columns = report::schema::lattice_points(dim);
    for (const auto& m : lattice::sphere_shell(j, dim)) {
      std::vector<std::string> row{cell(j)};
      for (Coord c : m.coords()) row.push_back(cell(c));
      t.add(std::move(row));
    }
    save(dir, "lattice_shell.csv", t);
    std::cout << "shell " << j << ": " << t.rows.size() << " points\n";
  } else if (s.is_set("center")) {
    const auto c = s.integers("center");
    if (static_cast<int>(c.size()) != dim) throw ConfigError("center needs " + std::to_string(dim) + " coordinates");
    const lattice::LatticePoint n(std::vector<Coord>(c.begin(), c.end()));
    const auto k_max = s.integer("k-max");
    if (k_max < 1) throw ConfigError("k-max must be >= 1");
    CsvTable t;
    t.columns = report::schema::partition(dim);
    for (Coord k = 1; k <= k_max; ++k) {
      const auto part = lattice::build_partition(n, k);
      for (Coord p = 0; p <= 2 * k; ++p) {
        std::vector<std::string> row{cell(dim)};
        for (Coord x : n.coords()) row.push_back(cell(x));
        row.push_back(cell(k));
        row.push_back(cell(part.owner[p]));
        row.push_back(cell(p));
        row.push_back(std::string(lattice::to_string(part.tag[p])));
        t.add(std::move(row));
      }
    }
    save(dir, "partition.csv", t);
    std::cout << "partition rows: " << t.rows.size() << '\n';
  } else {
    const auto j_max = s.integer("max-shell");
    if (j_max < 0) throw ConfigError("max-shell must be >= 0");
    const lattice::ShellTable table(dim, j_max);
    CsvTable t;
    t.columns = report::schema::shell_counts();
    for (Coord j = 0; j <= j_max; ++j) t.add({cell(dim), cell(j), cell(table.shell_size(j))});
    save(dir, "shell_counts.csv", t);
    std::cout << "shells 0.." << j_max << ": " << table.total_points() << " points\n";
  }
  write_manifest(dir, s);
  return ok;
}

// --- kernel-coeffs ----------------------------------------------------------

int run_kernel(const Settings& s, const std::string&) {
  kernel::WindowSpec w;
  w.dim = dimension(s);
  w.R = s.real("R");
  w.r = s.real("r");
  w.validate();
  const auto kind = s.text("kind");
  if (kind != "theta" && kind != "Theta") throw ConfigError("kind must be theta or Theta");
  const auto grid = static_cast<int>(s.integer("grid"));
  const Coord j_max = s.integer("j-max");
  const Coord n_max = s.integer("n-max");
  const auto dir = prepare(s);
  const auto window = kernel::build_window(w, grid);
  const auto kc = kernel::KernelCoeffs::build(window, j_max, n_max, threads(s));
  CsvTable t;
  t.meta = {{"kind", kind}, {"truncation_bound", cell(kc.truncation_bound())}};
  t.columns = report::schema::coefficients(w.dim);
  for (std::size_t row = 0; row < kc.rows(); ++row) {
    const auto vals = kind == "theta" ? kc.theta_row(row) : kc.big_theta_row(row);
    for (Coord j = 0; j <= j_max; ++j) {
      std::vector<std::string> cells{cell(w.dim), cell(w.R), cell(w.r), cell(grid), cell(j)};
      for (Coord c : kc.points()[row].coords()) cells.push_back(cell(c));
      cells.push_back(cell(vals[static_cast<std::size_t>(j)].real()));
      cells.push_back(cell(vals[static_cast<std::size_t>(j)].imag()));
      t.add(std::move(cells));
    }
  }
  save(dir, "coefficients.csv", t);
  write_manifest(dir, s);
  std::cout << kind << " coefficients: " << kc.rows() << " modes x " << j_max + 1 << " shells\n";
  return ok;
}

// --- sum --------------------------------------------------------------------

series::SpectralField sum_fixture(const Settings& s, int dim) {
  const Coord n_max = s.integer("n-max");
  if (n_max < 0) throw ConfigError("n-max must be >= 0");
  const auto name = s.text("fixture");
  if (name == "delta") {
    const auto m = s.integers("mode");
    if (static_cast<int>(m.size()) != dim) throw ConfigError("mode needs " + std::to_string(dim) + " coordinates");
    for (auto c : m)
      if (std::abs(c) > n_max) throw ConfigError("mode lies outside the band n-max");
    return series::SpectralField::delta(dim, n_max, lattice::LatticePoint(std::vector<Coord>(m.begin(), m.end())));
  }
  if (name == "random") {
    std::mt19937_64 rng(static_cast<std::uint64_t>(s.integer("seed")));
    return series::SpectralField::random(dim, n_max, rng, true);
  }
  if (name == "bump") {
    const series::TorusGrid grid(dim, static_cast<int>(s.integer("grid")));
    series::GridField g(grid);
    std::vector<double> x(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid.point(i, x);
      g.values[i] = bump((std::sqrt(grid.norm_sq(i)) - 2.0) / 0.8);
    }
    return series::analyze(g, n_max);
  }
  throw ConfigError("fixture must be delta, random or bump");
}

int run_sum(const Settings& s, const std::string&) {
  const int dim = dimension(s);
  const auto f = sum_fixture(s, dim);
  const auto lambdas = ascending(s, "lambda");
  const auto pts = probes(s, "probe", dim);
  std::vector<std::vector<series::cplx>> values;
  if (s.text("polynomial").empty()) {
    values = series::sum_trajectory(f, lambdas, pts);
  } else {
    const auto a = HomogeneousPolynomial::parse(s.text("polynomial"), dim);
    ellipticity_screen(a);
    for (double lambda : lambdas)
      values.push_back(series::evaluate_at(f, pts, [&](std::span<const Coord> n) { return a.at_lattice(n) < lambda; }));
  }
  const auto dir = prepare(s);
  CsvTable t;
  t.meta = {{"fixture", s.text("fixture")}, {"n_max", cell(f.n_max())}};
  t.columns = report::schema::partial_sum(dim);
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    for (std::size_t p = 0; p < pts.size(); ++p) {
      std::vector<std::string> row{cell(0), cell(lambdas[i])};
      for (double x : pts[p]) row.push_back(cell(x));
      const auto v = values[i][p];
      row.push_back(cell(v.real()));
      row.push_back(cell(v.imag()));
      row.push_back(cell(std::abs(v)));
      t.add(std::move(row));
      std::cout << "lambda=" << cell(lambdas[i]) << " point=" << p << " |S|=" << cell(std::abs(v)) << '\n';
    }
  save(dir, "sum.csv", t);
  write_manifest(dir, s);
  return ok;
}

// --- integral ---------------------------------------------------------------

int run_integral(const Settings& s, const std::string&) {
  const int dim = dimension(s);
  const auto lambdas = ascending(s, "lambda");
  const auto pts = probes(s, "probe", dim);
  integral::IntegralWindow w;
  w.R = s.real("R");
  w.r = s.real("r");
  w.A = s.real("A");
  w.validate();
  const double h = s.text("spacing").empty() ? 0.5 / lambdas.back() : s.real("spacing");
  const double mid = 0.5 * (w.R + w.A);
  const double half = 0.5 * (w.A - w.R);
  const auto f = integral::CompactField::sample(dim, h, w.R, w.A, [&](std::span<const double> y) {
    double n2 = 0.0;
    for (double c : y) n2 += c * c;
    return bump((std::sqrt(n2) - mid) / half) * (1.0 + 0.5 * y[0]);
  });
  const auto route = s.text("route");
  if (route != "space" && route != "spectral") throw ConfigError("route must be space or spectral");
  const bool windowed = s.flag("window");
  const auto dir = prepare(s);
  CsvTable t;
  t.meta = {{"fixture", "bump"}, {"route", route}, {"h", cell(h)}};
  t.columns = report::schema::partial_sum(dim);
  for (double lambda : lambdas) {
    const auto v = route == "space" ? integral::partial_integral(f, lambda, pts, windowed ? &w : nullptr, threads(s))
                                    : integral::partial_integral_spectral(f, lambda, pts);
    for (std::size_t p = 0; p < pts.size(); ++p) {
      std::vector<std::string> row{cell(0), cell(lambda)};
      for (double x : pts[p]) row.push_back(cell(x));
      row.push_back(cell(v[p].real()));
      row.push_back(cell(v[p].imag()));
      row.push_back(cell(std::abs(v[p])));
      t.add(std::move(row));
      std::cout << "lambda=" << cell(lambda) << " point=" << p << " |E|=" << cell(std::abs(v[p])) << '\n';
    }
  }
  save(dir, "integral.csv", t);
  write_manifest(dir, s);
  return ok;
}

// --- riesz ------------------------------------------------------------------

int run_riesz(const Settings& s, const std::string&) {
  const int dim = dimension(s);
  integral::RieszSpec spec;
  spec.s = s.real("s");
  spec.l = s.real("l");
  for (auto a : s.integers("alpha")) spec.alpha.push_back(static_cast<int>(a));
  spec.probe = s.flag("allow-negative");
  const auto x = s.reals("x");
  if (static_cast<int>(x.size()) != dim) throw ConfigError("x needs " + std::to_string(dim) + " coordinates");
  const auto count = s.integer("count");
  if (count < 2) throw ConfigError("count must be >= 2");
  const auto probe = integral::threshold_probe(spec, x, s.real("lambda0"), s.real("ratio"), static_cast<std::size_t>(count));
  const auto dir = prepare(s);
  CsvTable t;
  t.meta = {{"trend", integral::to_string(probe.fit.trend)}, {"slope", cell(probe.fit.slope)}};
  t.columns = report::schema::riesz_probe(dim);
  std::string alpha;
  for (std::size_t i = 0; i < spec.alpha.size(); ++i) alpha += (i ? ";" : "") + std::to_string(spec.alpha[i]);
  if (alpha.empty()) alpha = "0";
  for (std::size_t i = 0; i < probe.lambdas.size(); ++i) {
    std::vector<std::string> row{cell(dim), cell(spec.s), alpha, cell(probe.lambdas[i])};
    for (double c : x) row.push_back(cell(c));
    row.push_back(cell(probe.samples[i].real()));
    row.push_back(cell(probe.samples[i].imag()));
    row.push_back(cell(probe.values[i]));
    row.push_back(cell(probe.envelope[i]));
    t.add(std::move(row));
  }
  save(dir, "riesz.csv", t);
  write_manifest(dir, s);
  std::cout << "trend " << integral::to_string(probe.fit.trend) << " slope " << cell(probe.fit.slope) << '\n';
  return ok;
}

// --- verify / localize ------------------------------------------------------

verify::Thresholds thresholds(const Settings& s) {
  verify::Thresholds th;
  th.growth = s.real("growth");
  th.ratio_growth = s.real("ratio-growth");
  th.trend_slack = s.real("trend-slack");
  return th;
}

int emit(const fs::path& dir, const Settings& s, const std::string& arg, const std::string& json_name,
         const std::vector<verify::VerificationReport>& reports, bool single) {
  bool pass = true;
  for (const auto& r : reports) {
    for (const auto& [stem, table] : r.traces) save(dir, stem + ".csv", table);
    std::cout << r.lemma << ' ' << (r.pass ? "pass" : "fail") << '\n';
    std::cerr << "# " << r.lemma << ": " << cell(std::round(r.runtime_seconds * 100.0) / 100.0) << " s\n";
    pass = pass && r.pass;
  }
  save_text(dir, json_name, single ? verify::to_json(reports.front()) : verify::to_json(reports));
  write_manifest(dir, s, {{"argument", arg}});
  return pass ? ok : verdict_fail;
}

int run_verify(const Settings& s, const std::string& lemma) {
  verify::ScanRange range;
  range.dim = dimension(s);
  range.n_max = s.integer("n-max");
  range.k_max = s.integer("k-max");
  range.ls.clear();
  for (auto l : s.integers("l")) range.ls.push_back(static_cast<int>(l));
  range.R = s.real("R");
  range.r = s.real("r");
  range.grid = static_cast<int>(s.integer("grid"));
  range.seed = static_cast<std::uint64_t>(s.integer("seed"));
  range.threads = threads(s);
  range.trials = static_cast<int>(s.integer("trials"));
  range.transform_extent = s.real("transform-extent");
  range.validate();
  const auto& ids = verify::lemma_ids();
  if (lemma != "all" && std::find(ids.begin(), ids.end(), lemma) == ids.end())
    throw ConfigError("unknown lemma '" + lemma + "'");
  const auto dir = prepare(s);
  verify::Campaign campaign(range, thresholds(s));
  std::vector<verify::VerificationReport> reports;
  for (const auto& id : lemma == "all" ? ids : std::vector<std::string>{lemma}) reports.push_back(campaign.run(id));
  return emit(dir, s, lemma, "verdict.json", reports, lemma != "all");
}

int run_localize(const Settings& s, const std::string& which) {
  dimension(s);
  if (s.integer("dimension") != 2) throw ConfigError("localization experiments run in dimension 2");
  const auto th = thresholds(s);
  std::vector<verify::VerificationReport> reports;
  if (which == "series") {
    verify::SeriesLocalizationConfig cfg;
    cfg.trials = static_cast<int>(s.integer("trials"));
    cfg.n_max_base = s.integer("n-max");
    cfg.n_max_doubled = s.integer("n-max-doubled");
    cfg.R = s.real("R");
    cfg.r = s.real("r");
    cfg.grid = static_cast<int>(s.integer("grid"));
    cfg.seed = static_cast<std::uint64_t>(s.integer("seed"));
    cfg.threads = threads(s);
    if (s.is_set("lambdas")) cfg.trend_lambdas = ascending(s, "lambdas");
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
    const auto dir = prepare(s);
    reports.push_back(verify::run_localization_series(cfg, th));
    return emit(dir, s, which, "localize-series.json", reports, true);
  }
  if (which == "integral") {
    verify::IntegralLocalizationConfig cfg;
    cfg.R = s.real("R");
    cfg.r = s.real("r");
    cfg.A = s.real("A");
    cfg.threads = threads(s);
    cfg.block_samples = static_cast<int>(s.integer("block-samples"));
    if (s.is_set("lambdas")) cfg.lambdas = ascending(s, "lambdas");
    const auto dir = prepare(s);
    reports.push_back(verify::run_localization_integral(cfg, th));
    return emit(dir, s, which, "localize-integral.json", reports, true);
  }
  throw ConfigError("localize takes series or integral");
}

}  // namespace

std::vector<Command> commands() {
  const std::vector<KeySpec> thresholds_keys{
      {"growth", "1.5", "max doubled/base growth of a fitted constant"},
      {"ratio-growth", "1.2", "max growth of the localization ratio"},
      {"trend-slack", "0.1", "relative slack for non-increasing trends"},
  };
  auto verify_keys = with_common({
      {"n-max", "24", "band |n| <= n-max"},
      {"k-max", "12", "blocks k <= k-max, J = (k-max + 1)^2"},
      {"l", "1,2,4", "weight exponents"},
      {"R", "1", "outer window radius"},
      {"r", "0.5", "inner window radius"},
      {"grid", "1024", "window grid M"},
      {"trials", "3", "random fields per range"},
      {"transform-extent", "20", "integral-side scan extent E"},
  });
  verify_keys.insert(verify_keys.end(), thresholds_keys.begin(), thresholds_keys.end());
  auto localize_keys = with_common({
      {"trials", "100", "random trials (series)"},
      {"n-max", "16", "base band (series)"},
      {"n-max-doubled", "32", "doubled band (series)"},
      {"R", "1", "support radius"},
      {"r", "0.5", "inner ball radius"},
      {"A", "1.5", "outer support radius (integral)"},
      {"grid", "128", "evaluation grid (series)"},
      {"lambdas", "", "trend block edges, ascending"},
      {"block-samples", "6", "lambda samples per block (integral)"},
  });
  localize_keys.insert(localize_keys.end(), thresholds_keys.begin(), thresholds_keys.end());

  return {
      {"lattice", "shell points, shell counts or ring partitions",
       with_common({{"shell", "", "list the points of the shell |m|^2 = j"},
                    {"max-shell", "25", "count shells 0..j"},
                    {"center", "", "ring partitions around this point, e.g. 3,1"},
                    {"k-max", "4", "partition rings k = 1..k-max"}}),
       "", run_lattice},
      {"kernel-coeffs", "windowed kernel coefficient table",
       with_common({{"R", "1", "outer window radius"},
                    {"r", "0.5", "inner window radius"},
                    {"grid", "1024", "window grid M"},
                    {"j-max", "64", "largest shell j"},
                    {"n-max", "8", "modes |n| <= n-max"},
                    {"kind", "theta", "theta or Theta"}}),
       "", run_kernel},
      {"sum", "spherical or elliptic partial sums at probe points",
       with_common({{"n-max", "8", "band"},
                    {"fixture", "delta", "delta, random or bump"},
                    {"mode", "1,0", "delta position"},
                    {"lambda", "10", "ascending list, sum over |n|^2 < lambda"},
                    {"probe", "0,0", "points x1,x2;y1,y2"},
                    {"polynomial", "", "elliptic symbol, e.g. x1^4 + x2^4"},
                    {"grid", "64", "analysis grid for the bump fixture"}}),
       "", run_sum},
      {"integral", "spherical partial integrals of an annulus bump",
       with_common({{"R", "1", "inner support radius"},
                    {"r", "0.5", "window evaluation radius"},
                    {"A", "1.5", "outer support radius"},
                    {"lambda", "10", "ascending list"},
                    {"probe", "0,0", "points x1,x2;y1,y2"},
                    {"spacing", "", "sample spacing h [0.5 / max lambda]"},
                    {"route", "space", "space or spectral"},
                    {"window", "false", "multiply the kernel by the cutoff"}}),
       "", run_integral},
      {"riesz", "Riesz means of delta derivatives along a geometric lambda grid",
       with_common({{"s", "2", "Riesz order"},
                    {"alpha", "", "derivative multi-index, e.g. 1,0"},
                    {"l", "1.5", "Sobolev index of the target"},
                    {"x", "0.5,0", "probe point"},
                    {"lambda0", "4", "first lambda"},
                    {"ratio", "1.5", "lambda ratio"},
                    {"count", "12", "grid size"},
                    {"allow-negative", "false", "permit s < 0"}}),
       "", run_riesz},
      {"verify", "lemma verification campaign", verify_keys, "lemma id or all", run_verify},
      {"localize", "localization experiments", localize_keys, "series or integral", run_localize},
  };
}

}  // namespace genloc::cli

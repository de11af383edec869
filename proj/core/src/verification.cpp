#include "genloc/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "genloc/errors.hpp"
#include "genloc/integral.hpp"
#include "genloc/parallel.hpp"
#include "genloc/series.hpp"
#include "verify_internal.hpp"

namespace genloc::verify {

namespace {

constexpr double kPi = std::numbers::pi;

using cplx = std::complex<double>;
using lattice::LatticePoint;
using series::SpectralField;
using series::TorusGrid;

double norm_of(const LatticePoint& n) { return std::sqrt(static_cast<double>(n.norm_sq())); }

int next_pow2(Coord v) {
  int m = 2;
  while (m < v) m *= 2;
  return m;
}

// Per-row reduction in row order, so the result does not depend on threads.
template <class RowFn>
double sup_over_rows(const LemmaTables& t, RowFn&& fn) {
  const auto& kc = t.coeffs();
  std::vector<double> per(kc.rows(), 0.0);
  parallel_for(kc.rows(), t.range().threads, [&](std::size_t row) { per[row] = fn(row); });
  double best = 0.0;
  for (double v : per) best = std::max(best, v);
  return best;
}

FittedConstant fit(std::string name, std::string formula, double l, double base, double doubled,
                   double threshold) {
  FittedConstant c;
  c.name = std::move(name);
  c.formula = std::move(formula);
  c.l = l;
  c.base = base;
  c.doubled = doubled;
  c.growth = base > 0.0 ? doubled / base : (doubled > 0.0 ? INFINITY : 1.0);
  c.pass = std::isfinite(c.growth) && c.growth < threshold;
  return c;
}

bool all_pass(const std::vector<FittedConstant>& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const FittedConstant& c) { return c.pass; });
}

std::string point_text(const LatticePoint& n) {
  std::ostringstream out;
  out << '(';
  for (int a = 0; a < n.dimension(); ++a) out << (a ? "," : "") << n[static_cast<std::size_t>(a)];
  out << ')';
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------

ScanRange ScanRange::doubled() const {
  ScanRange d = *this;
  d.n_max *= 2;
  d.k_max *= 2;
  d.transform_extent *= 2.0;
  return d;
}

void ScanRange::validate() const {
  if (dim < 1) throw ParameterError("dimension must be >= 1");
  if (n_max < 1 || k_max < 1) throw ParameterError("n_max and k_max must be >= 1");
  if (k_max > 127) throw ParameterError("k_max must be <= 127");
  if (ls.empty()) throw ParameterError("the l list is empty");
  for (int l : ls)
    if (l < 1) throw ParameterError("l values must be >= 1");
  if (grid < 64 || (grid & (grid - 1)) != 0) throw ParameterError("grid must be a power of two >= 64");
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (threads < 1) throw ParameterError("threads must be >= 1");
  if (!(transform_extent > 0.0)) throw ParameterError("transform extent must be positive");
  kernel::WindowSpec w;
  w.R = R;
  w.r = r;
  w.dim = dim;
  w.validate();
}

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids{
      "telescoping", "band-limit",  "tevzadze", "cardinality", "min-norm",
      "coef2",       "bigl",        "LBig",     "W",           "Q",
      "Sbigl",       "Lsmall",      "W2-identity", "sum-bound", "ft",
      "INT",         "MAX1-ratio",  "localization-series", "localization-integral",
      "riesz-threshold"};
  return ids;
}

std::shared_ptr<const LemmaTables> LemmaTables::build(const ScanRange& range) {
  range.validate();
  kernel::WindowSpec spec;
  spec.R = range.R;
  spec.r = range.r;
  spec.dim = range.dim;
  auto t = std::make_shared<LemmaTables>();
  t->range_ = range;
  t->coeffs_ = kernel::KernelCoeffs::build(kernel::build_window(spec, range.grid), range.max_j(),
                                           range.n_max, range.threads);
  const lattice::ShellTable shells(range.dim, range.max_j());
  const auto& pts = t->coeffs_.points();
  t->owners_.resize(pts.size());
  parallel_for(pts.size(), range.threads, [&](std::size_t row) {
    auto& per_k = t->owners_[row];
    per_k.resize(static_cast<std::size_t>(range.k_max) + 1);
    for (Coord k = 1; k <= range.k_max; ++k) {
      const auto part = lattice::build_partition(pts[row], k, shells);
      auto& own = per_k[static_cast<std::size_t>(k)];
      own.resize(part.owner.size());
      for (std::size_t p = 0; p < own.size(); ++p) own[p] = static_cast<std::uint8_t>(part.owner[p]);
    }
  });
  return t;
}

void LemmaTables::require(const ScanRange& r) const {
  if (r.dim != range_.dim || r.n_max > range_.n_max || r.k_max > range_.k_max || r.R != range_.R ||
      r.r != range_.r || r.grid != range_.grid)
    throw DependencyError("coefficient tables do not cover the requested scan range");
}

// --- fitted constants ------------------------------------------------------

double coef2_constant(const LemmaTables& t, double l) {
  const auto& kc = t.coeffs();
  const Coord J = t.range().max_j();
  return sup_over_rows(t, [&](std::size_t row) {
    const double nn = norm_of(kc.points()[row]);
    const auto th = kc.theta_row(row);
    double best = 0.0;
    for (Coord j = 1; j <= J; ++j) {
      const double w = std::pow(1.0 + std::abs(nn - std::sqrt(static_cast<double>(j))), l);
      best = std::max(best, std::abs(th[static_cast<std::size_t>(j)]) * w);
    }
    return best;
  });
}

double bigl_constant(const LemmaTables& t, double l) {
  const auto& kc = t.coeffs();
  const Coord kmax = t.range().k_max;
  return sup_over_rows(t, [&](std::size_t row) {
    const double nn = norm_of(kc.points()[row]);
    const auto big = kc.big_theta_row(row);
    double best = 0.0;
    for (Coord k = 0; k <= kmax; ++k) {
      double s = 0.0;
      for (Coord p = 0; p <= 2 * k; ++p) s += std::norm(big[static_cast<std::size_t>(k * k + p)]);
      best = std::max(best, s * std::pow(1.0 + std::abs(nn - static_cast<double>(k)), l));
    }
    return best;
  });
}

double lbig_constant(const LemmaTables& t) {
  const auto& kc = t.coeffs();
  const Coord J = t.range().max_j();
  return sup_over_rows(t, [&](std::size_t row) {
    const auto big = kc.big_theta_row(row);
    double s = 0.0;
    for (Coord j = 0; j < J; ++j) s += std::norm(big[static_cast<std::size_t>(j)]);
    return s;
  });
}

double w_constant(const LemmaTables& t) {
  const auto& kc = t.coeffs();
  const Coord J = t.range().max_j();
  return sup_over_rows(t, [&](std::size_t row) {
    const auto th = kc.theta_row(row);
    double s = 0.0;
    for (Coord j = 0; j < J; ++j) s += std::norm(th[static_cast<std::size_t>(j)]);
    return s / std::max(1.0, norm_of(kc.points()[row]));
  });
}

namespace {

// sum_q (q+1)^{+-2} sum_{p in Q_q^k} |c_{k^2+p}|^2 for one row and k.
double weighted_block(std::span<const cplx> c, const std::vector<std::uint8_t>& owner, Coord k, bool inverse) {
  double s = 0.0;
  for (Coord p = 0; p <= 2 * k; ++p) {
    const double q1 = 1.0 + owner[static_cast<std::size_t>(p)];
    const double w = inverse ? 1.0 / (q1 * q1) : q1 * q1;
    s += w * std::norm(c[static_cast<std::size_t>(k * k + p)]);
  }
  return s;
}

}  // namespace

double q_constant(const LemmaTables& t, double l, bool root) {
  const auto& kc = t.coeffs();
  const Coord kmax = t.range().k_max;
  return sup_over_rows(t, [&](std::size_t row) {
    const auto& n = kc.points()[row];
    if (n.is_zero()) return 0.0;
    const double nn = norm_of(n);
    const auto big = kc.big_theta_row(row);
    double best = 0.0;
    for (Coord k = 1; k <= kmax; ++k) {
      const double d = std::abs(nn - static_cast<double>(k));
      const double w = std::pow(1.0 + (root ? std::sqrt(d) : d), l);
      best = std::max(best, w * weighted_block(big, t.owners(row)[static_cast<std::size_t>(k)], k, false));
    }
    return best;
  });
}

double sbigl_constant(const LemmaTables& t) {
  const auto& kc = t.coeffs();
  const Coord kmax = t.range().k_max;
  return sup_over_rows(t, [&](std::size_t row) {
    if (kc.points()[row].is_zero()) return 0.0;
    const auto big = kc.big_theta_row(row);
    double s = 0.0;
    for (Coord k = 1; k <= kmax; ++k) s += weighted_block(big, t.owners(row)[static_cast<std::size_t>(k)], k, false);
    return s;
  });
}

double lsmall_constant(const LemmaTables& t) {
  const auto& kc = t.coeffs();
  const Coord kmax = t.range().k_max;
  return sup_over_rows(t, [&](std::size_t row) {
    if (kc.points()[row].is_zero()) return 0.0;
    const auto th = kc.theta_row(row);
    double s = 0.0;
    for (Coord k = 1; k <= kmax; ++k) s += weighted_block(th, t.owners(row)[static_cast<std::size_t>(k)], k, true);
    return s;
  });
}

// --- campaign ----------------------------------------------------------------

Campaign::Campaign(ScanRange range, Thresholds thresholds)
    : range_(std::move(range)), thresholds_(thresholds) {
  range_.validate();
}

const LemmaTables& Campaign::base_tables() {
  if (!base_) base_ = LemmaTables::build(range_);
  return *base_;
}

const LemmaTables& Campaign::doubled_tables() {
  if (!doubled_) doubled_ = LemmaTables::build(range_.doubled());
  return *doubled_;
}

namespace {

// Axis radius 1 <= m <= M/4 where |psi_m| (1 + m)^l peaks. A peak beyond the scanned
// distances means the sup has not saturated on either range.
double psi_peak_radius(const LemmaTables& t, double l) {
  const auto& kc = t.coeffs();
  const auto win = kernel::build_window(kc.spec(), kc.grid());
  std::vector<Coord> m(static_cast<std::size_t>(kc.dimension()), 0);
  double best = -1.0;
  Coord at = 0;
  for (Coord k = 1; k <= kc.grid() / 4; ++k) {
    m[0] = k;
    const double v = std::abs(win.coeff(m)) * std::pow(1.0 + static_cast<double>(k), l);
    if (v > best) {
      best = v;
      at = k;
    }
  }
  return static_cast<double>(at);
}

void lemma_stability(VerificationReport& rep, const LemmaTables& b, const LemmaTables& d,
                     const Thresholds& th, const std::string& id) {
  auto per_l = [&](const std::string& name, const std::string& formula, auto&& fn) {
    for (int l : b.range().ls)
      rep.constants.push_back(fit(name + "_" + std::to_string(l), formula, l, fn(b, l), fn(d, l), th.growth));
  };
  if (id == "coef2") {
    per_l("C", "sup_{1<=j<=J, |n|<=n_max} |(theta_j)_n| (1 + ||n| - sqrt(j)|)^l",
          [](const LemmaTables& t, int l) { return coef2_constant(t, l); });
  } else if (id == "bigl") {
    per_l("C", "sup_{n, k<=k_max} sum_{k<=sqrt(j)<k+1} |(Theta_j)_n|^2 (1 + ||n| - k|)^l",
          [](const LemmaTables& t, int l) { return bigl_constant(t, l); });
  } else if (id == "LBig") {
    rep.constants.push_back(fit("C", "sup_n sum_{j<J} |(Theta_j)_n|^2", 0, lbig_constant(b), lbig_constant(d), th.growth));
  } else if (id == "W") {
    rep.constants.push_back(
        fit("C", "sup_n sum_{j<J} |(theta_j)_n|^2 / max(1, |n|)", 0, w_constant(b), w_constant(d), th.growth));
  } else if (id == "Q") {
    per_l("C", "sup_{n!=0, 1<=k<=k_max} sum_q (q+1)^2 sum_{p in Q_q^k} |(Theta_{k^2+p})_n|^2 (1 + sqrt(||n| - k|))^l",
          [](const LemmaTables& t, int l) { return q_constant(t, l, true); });
    // Open question: does only the non-root weight stabilize? Reported, not gated.
    for (int l : b.range().ls) {
      const auto c = fit("C_nonroot_" + std::to_string(l),
                         "sup_{n!=0, 1<=k<=k_max} sum_q (q+1)^2 sum_{p in Q_q^k} |(Theta_{k^2+p})_n|^2 (1 + ||n| - k|)^l",
                         l, q_constant(b, l, false), q_constant(d, l, false), th.growth);
      rep.metrics["nonroot_growth_" + std::to_string(l)] = c.growth;
    }
  } else if (id == "Sbigl") {
    rep.constants.push_back(fit("C", "sup_{n!=0} sum_{1<=k<=k_max} sum_q (q+1)^2 sum_{p in Q_q^k} |(Theta_{k^2+p})_n|^2",
                                0, sbigl_constant(b), sbigl_constant(d), th.growth));
  } else if (id == "Lsmall") {
    rep.constants.push_back(fit("C", "sup_{n!=0} sum_{1<=k<=k_max} sum_q (q+1)^-2 sum_{p in Q_q^k} |(theta_{k^2+p})_n|^2",
                                0, lsmall_constant(b), lsmall_constant(d), th.growth));
  }
  for (int l : b.range().ls) rep.metrics["psi_peak_radius_" + std::to_string(l)] = psi_peak_radius(b, l);
  rep.pass = all_pass(rep.constants);
}

// LBig spread: sum_j |(Theta_j)_n|^2 over |n| <= 30 with every shell up to
// |n| + 5 tabulated.
void lbig_spread(VerificationReport& rep, const ScanRange& range, const Thresholds& th) {
  ScanRange wide = range;
  wide.n_max = 30;
  wide.k_max = 35;
  kernel::WindowSpec spec;
  spec.R = range.R;
  spec.r = range.r;
  spec.dim = range.dim;
  const auto kc = kernel::KernelCoeffs::build(kernel::build_window(spec, range.grid), wide.max_j(), wide.n_max,
                                              range.threads);
  double lo = INFINITY;
  double hi = 0.0;
  for (std::size_t row = 0; row < kc.rows(); ++row) {
    const auto big = kc.big_theta_row(row);
    double s = 0.0;
    for (Coord j = 0; j < wide.max_j(); ++j) s += std::norm(big[static_cast<std::size_t>(j)]);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  rep.metrics["spread_max"] = hi;
  rep.metrics["spread_min"] = lo;
  rep.metrics["spread_ratio"] = hi / lo;
  rep.metrics["spread_threshold"] = th.lbig_spread;
  rep.pass = rep.pass && hi / lo < th.lbig_spread;
}

void telescoping(VerificationReport& rep, const LemmaTables& t, const std::string& tag, double tol) {
  const auto& kc = t.coeffs();
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t row = 0; row < kc.rows(); ++row) {
    const auto th = kc.theta_row(row);
    const auto big = kc.big_theta_row(row);
    for (std::size_t j = 0; j + 1 < th.size(); ++j) {
      worst = std::max(worst, std::abs(th[j + 1] - th[j] - big[j]));
      scale = std::max(scale, std::abs(th[j + 1]));
    }
    worst = std::max(worst, std::abs(th[0]));
  }
  const double rel = worst / std::max(scale, 1e-300);
  rep.metrics["residual_" + tag] = rel;
  rep.pass = rep.pass && rel < tol;
}

void band_limit(VerificationReport& rep, std::uint64_t seed, double tol) {
  double worst = 0.0;
  for (int dim : {1, 2, 3}) {
    std::seed_seq ss{seed, static_cast<std::uint64_t>(dim), std::uint64_t{0xb1}};
    std::mt19937_64 rng(ss);
    const Coord nm = dim == 3 ? 6 : 12;
    const TorusGrid grid(dim, next_pow2(2 * nm + 2));
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = SpectralField::random(dim, nm, rng, trial % 2 == 0);
      const auto all = series::synthesize(f, grid);
      const auto s = series::spherical_sum(f, static_cast<double>(dim * nm * nm) + 1.0, grid);
      double diff = 0.0;
      double scale = 0.0;
      for (std::size_t i = 0; i < all.values.size(); ++i) {
        diff = std::max(diff, std::abs(all.values[i] - s.values[i]));
        scale = std::max(scale, std::abs(all.values[i]));
      }
      worst = std::max(worst, diff / scale);
    }
  }
  rep.metrics["residual"] = worst;
  rep.pass = worst < tol;
}

void tevzadze(VerificationReport& rep, std::uint64_t seed, double tol) {
  std::seed_seq ss{seed, std::uint64_t{0x7e}};
  std::mt19937_64 rng(ss);
  const TorusGrid grid(2, 32);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = SpectralField::random(2, 8, rng, false);
    const Coord k = trial % 10;
    const auto split = series::tevzadze_split(f, k, grid);
    const auto direct = series::square_sum(f, k, grid);
    double diff = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < direct.values.size(); ++i) {
      diff = std::max(diff, std::abs(split.recombined.values[i] - direct.values[i]));
      scale = std::max(scale, std::abs(direct.values[i]));
    }
    worst = std::max(worst, diff / scale);
  }
  rep.metrics["trials"] = 50;
  rep.metrics["residual"] = worst;
  rep.pass = worst < tol;
}

// W2 identity and the assembled maximal bound share the convolutions.
struct TrialResult {
  double identity_residual = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double imag = 0.0;
};

TrialResult chain_trial(const LemmaTables& t, std::uint64_t trial) {
  const auto& range = t.range();
  const auto& kc = t.coeffs();
  const int dim = range.dim;
  const auto nf = static_cast<Coord>(std::floor(static_cast<double>(range.n_max) / std::sqrt(dim)));
  thread_local std::map<std::pair<int, Coord>, std::shared_ptr<series::SupportProjector>> cache;
  auto& proj = cache[{dim, nf}];
  if (!proj) proj = std::make_shared<series::SupportProjector>(dim, nf, range.R);
  std::seed_seq ss{range.seed, trial, static_cast<std::uint64_t>(range.n_max), std::uint64_t{0xc4}};
  std::mt19937_64 rng(ss);
  const auto f = proj->draw(rng);
  const TorusGrid grid(dim, 2 * next_pow2(2 * nf + 2));

  const Coord J = range.max_j();
  std::vector<double> sq_sum(grid.size(), 0.0);
  std::vector<double> cross(grid.size(), 0.0);
  std::vector<double> sup(grid.size(), 0.0);
  TrialResult out;
  double scale = 0.0;
  double worst = 0.0;
  for (Coord q = 0; q <= J; ++q) {
    const auto th = series::windowed_convolution(f, kc, q, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double v = th.values[i].real();
      out.imag = std::max(out.imag, std::abs(th.values[i].imag()));
      if (q > 0) {
        const double lhs = v * v;
        worst = std::max(worst, std::abs(lhs - (sq_sum[i] + 2.0 * cross[i])));
        scale = std::max(scale, lhs);
        sup[i] = std::max(sup[i], lhs);
      }
    }
    if (q == J) break;
    const auto big = series::shell_convolution(f, kc, q, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double b = big.values[i].real();
      sq_sum[i] += b * b;
      cross[i] += b * th.values[i].real();
    }
  }
  out.identity_residual = worst / std::max(scale, 1e-300);
  for (double v : sup) out.lhs += v;
  out.lhs *= grid.cell_volume();

  // Right side from the tables: (2 pi)^{3N} sum_n |f_n|^2 [three sums].
  std::vector<Coord> n(static_cast<std::size_t>(dim));
  double rhs = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double fn2 = std::norm(f.coeffs()[i]);
    if (fn2 == 0.0) continue;
    f.point_of(i, n);
    const auto row = kc.row_of(n);
    if (!row) throw RangeError("field mode outside the coefficient table");
    const auto th = kc.theta_row(*row);
    const auto big = kc.big_theta_row(*row);
    double s = 0.0;
    for (Coord j = 0; j < J; ++j) s += std::norm(big[static_cast<std::size_t>(j)]);
    for (Coord k = 1; k <= range.k_max; ++k) {
      const auto& own = t.owners(*row)[static_cast<std::size_t>(k)];
      s += weighted_block(big, own, k, false) + weighted_block(th, own, k, true);
    }
    rhs += fn2 * s;
  }
  out.rhs = rhs * std::pow(2.0 * kPi, 3 * dim);
  return out;
}

void chain(VerificationReport& rep, const LemmaTables& t, const std::string& tag, const Thresholds& th,
           bool identity) {
  std::vector<TrialResult> res(static_cast<std::size_t>(t.range().trials));
  for (std::size_t i = 0; i < res.size(); ++i) res[i] = chain_trial(t, i);
  double worst_id = 0.0;
  double worst_ratio = 0.0;
  double imag = 0.0;
  bool ok = true;
  for (const auto& r : res) {
    worst_id = std::max(worst_id, r.identity_residual);
    worst_ratio = std::max(worst_ratio, r.lhs / r.rhs);
    imag = std::max(imag, r.imag);
    ok = ok && (identity ? r.identity_residual < th.identity_tol : r.lhs <= r.rhs * (1.0 + th.bound_slack));
  }
  rep.metrics["trials_" + tag] = static_cast<double>(res.size());
  rep.metrics["max_imag_" + tag] = imag;
  if (identity) {
    rep.metrics["residual_" + tag] = worst_id;
  } else {
    rep.metrics["max_lhs_over_rhs_" + tag] = worst_ratio;
    for (std::size_t i = 0; i < res.size(); ++i) {
      rep.metrics["lhs_" + tag + "_" + std::to_string(i)] = res[i].lhs;
      rep.metrics["rhs_" + tag + "_" + std::to_string(i)] = res[i].rhs;
    }
  }
  rep.pass = rep.pass && ok;
}

}  // namespace

VerificationReport Campaign::run(const std::string& id) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.lemma = id;
  rep.range = range_;
  rep.pass = true;
  const auto& th = thresholds_;
  if (id == "coef2" || id == "bigl" || id == "LBig" || id == "W" || id == "Q" || id == "Sbigl" ||
      id == "Lsmall") {
    lemma_stability(rep, base_tables(), doubled_tables(), th, id);
    if (id == "LBig") lbig_spread(rep, range_, th);
  } else if (id == "telescoping") {
    telescoping(rep, base_tables(), "base", th.exact_tol);
    telescoping(rep, doubled_tables(), "doubled", th.exact_tol);
  } else if (id == "band-limit") {
    band_limit(rep, range_.seed, th.band_tol);
  } else if (id == "tevzadze") {
    tevzadze(rep, range_.seed, th.exact_tol);
  } else if (id == "W2-identity") {
    chain(rep, base_tables(), "base", th, true);
  } else if (id == "sum-bound") {
    chain(rep, base_tables(), "base", th, false);
    chain(rep, doubled_tables(), "doubled", th, false);
  } else if (id == "cardinality" || id == "min-norm") {
    detail::partition_scan_report(rep, id, range_.threads);
  } else if (id == "ft" || id == "INT") {
    detail::transform_report(rep, id, range_, th);
  } else if (id == "MAX1-ratio" || id == "localization-series") {
    SeriesLocalizationConfig cfg;
    cfg.seed = range_.seed;
    cfg.R = range_.R;
    cfg.r = range_.r;
    cfg.threads = range_.threads;
    if (id == "MAX1-ratio")
      detail::max1_ratio(rep, cfg, th);
    else
      detail::series_trend(rep, cfg, th);
  } else if (id == "localization-integral") {
    IntegralLocalizationConfig cfg;
    cfg.R = range_.R;
    cfg.r = range_.r;
    cfg.threads = range_.threads;
    rep = run_localization_integral(cfg, th);
    rep.range = range_;
  } else if (id == "riesz-threshold") {
    rep = run_riesz_thresholds({});
    rep.range = range_;
  } else {
    throw ParameterError("unknown lemma id: " + id);
  }
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

VerificationReport verify_lemma(const std::string& lemma, const ScanRange& range, const Thresholds& thresholds) {
  Campaign c(range, thresholds);
  return c.run(lemma);
}

namespace detail {

void partition_scan_report(VerificationReport& rep, const std::string& id, int threads) {
  const auto& scan = partition_scan(threads);
  rep.metrics["cover_violations"] = static_cast<double>(scan.cover_violations);
  if (id == "cardinality") {
    rep.metrics["checked_sets"] = static_cast<double>(scan.sets_checked);
    rep.metrics["violations"] = static_cast<double>(scan.card_violations);
    rep.metrics["violations_N2"] = static_cast<double>(scan.card_violations_by_dim[0]);
    rep.metrics["violations_N3"] = static_cast<double>(scan.card_violations_by_dim[1]);
    if (scan.card_violations > 0) rep.notes.push_back("first violation: " + scan.first_card_violation);
    rep.pass = scan.card_violations == 0;
  } else {
    rep.metrics["checked_points"] = static_cast<double>(scan.points_checked);
    rep.metrics["violations"] = static_cast<double>(scan.norm_violations);
    rep.metrics["violations_all_members"] = static_cast<double>(scan.norm_violations_all);
    if (scan.norm_violations > 0) rep.notes.push_back("first violation: " + scan.first_norm_violation);
    rep.pass = scan.norm_violations == 0;
  }
  rep.notes.push_back("exhaustive scan: N in {2,3}, 1 <= k <= 15, 0 < |n| <= 30");
}

const PartitionScan& partition_scan(int threads) {
  static const PartitionScan scan = [threads] {
    PartitionScan s;
    for (int dim = 2; dim <= 3; ++dim) {
      const lattice::ShellTable shells(dim, 256);
      auto centers = lattice::enumerate_ball(901.0, dim);
      std::erase_if(centers, [](const LatticePoint& n) { return n.is_zero(); });
      struct Local {
        std::size_t sets = 0, card = 0, points = 0, norm = 0, norm_all = 0, cover = 0;
        std::string first_card, first_norm;
      };
      std::vector<Local> per(centers.size());
      parallel_for(centers.size(), threads, [&](std::size_t i) {
        auto& loc = per[i];
        for (Coord k = 1; k <= 15; ++k) {
          const auto part = lattice::build_partition(centers[i], k, shells);
          std::vector<int> seen(static_cast<std::size_t>(2 * k + 1), 0);
          bool cover_ok = part.owner.size() == seen.size();
          for (std::size_t q = 0; q < part.set_count(); ++q)
            for (Coord p : part.sets[q]) {
              if (p < 0 || p > 2 * k) {
                cover_ok = false;
                continue;
              }
              ++seen[static_cast<std::size_t>(p)];
              cover_ok = cover_ok && part.owner[static_cast<std::size_t>(p)] == static_cast<int>(q);
            }
          for (int c : seen) cover_ok = cover_ok && c == 1;
          if (!cover_ok) ++loc.cover;
          for (std::size_t q = 0; q < part.set_count(); ++q) {
            ++loc.sets;
            const auto size = static_cast<Coord>(part.sets[q].size());
            const auto bound = lattice::cardinality_bound(dim, static_cast<Coord>(q));
            if (size > bound) {
              if (loc.card == 0)
                loc.first_card = "n=" + point_text(centers[i]) + " k=" + std::to_string(k) +
                                 " q=" + std::to_string(q) + " |Q|=" + std::to_string(size) +
                                 " bound=" + std::to_string(bound);
              ++loc.card;
            }
          }
          const auto geo = lattice::min_norm_check(part, shells);
          const auto all = lattice::min_norm_check(part, shells, lattice::MinNormScope::all_members);
          loc.points += geo.checked;
          loc.norm += geo.violations.size();
          loc.norm_all += all.violations.size();
          if (!geo.violations.empty() && loc.first_norm.empty()) {
            const auto& v = geo.violations.front();
            loc.first_norm = "n=" + point_text(centers[i]) + " k=" + std::to_string(k) + " q=" +
                             std::to_string(v.q) + " p=" + std::to_string(v.p) + " m=" + point_text(v.m);
          }
        }
      });
      for (const auto& loc : per) {
        s.sets_checked += loc.sets;
        s.cover_violations += loc.cover;
        s.card_violations += loc.card;
        s.card_violations_by_dim[static_cast<std::size_t>(dim - 2)] += loc.card;
        s.points_checked += loc.points;
        s.norm_violations += loc.norm;
        s.norm_violations_all += loc.norm_all;
        if (s.first_card_violation.empty() && !loc.first_card.empty()) s.first_card_violation = loc.first_card;
        if (s.first_norm_violation.empty() && !loc.first_norm.empty()) s.first_norm_violation = loc.first_norm;
      }
    }
    return s;
  }();
  return scan;
}

}  // namespace detail

}  // namespace genloc::verify

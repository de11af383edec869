#include <gtest/gtest.h>

#include <cmath>

#include "genloc/errors.hpp"
#include "genloc/kernel.hpp"
#include "genloc/lattice.hpp"
#include "genloc/verification.hpp"

namespace gv = genloc::verify;
namespace gk = genloc::kernel;
namespace gl = genloc::lattice;
using gl::Coord;

namespace {

gv::ScanRange small_range() {
  gv::ScanRange r;
  r.n_max = 6;
  r.k_max = 4;
  r.grid = 256;
  r.trials = 1;
  r.transform_extent = 4.0;
  return r;
}

const gv::LemmaTables& small_tables() {
  static const auto t = gv::LemmaTables::build(small_range());
  return *t;
}

double norm_of(const gl::LatticePoint& n) { return std::sqrt(static_cast<double>(n.norm_sq())); }

}  // namespace

TEST(ScanRange, DoublingAndShellCount) {
  gv::ScanRange r;
  EXPECT_EQ(r.max_j(), 169);
  const auto d = r.doubled();
  EXPECT_EQ(d.n_max, 48);
  EXPECT_EQ(d.k_max, 24);
  EXPECT_EQ(d.max_j(), 625);
  EXPECT_DOUBLE_EQ(d.transform_extent, 40.0);
  EXPECT_EQ(d.ls, r.ls);
}

TEST(ScanRange, ValidationRejectsBadRanges) {
  auto r = small_range();
  r.n_max = 0;
  EXPECT_THROW(r.validate(), genloc::ParameterError);
  r = small_range();
  r.grid = 100;
  EXPECT_THROW(r.validate(), genloc::ParameterError);
  r = small_range();
  r.r = 1.5;
  EXPECT_THROW(r.validate(), genloc::ParameterError);
  r = small_range();
  r.ls.clear();
  EXPECT_THROW(r.validate(), genloc::ParameterError);
}

TEST(LemmaTables, RequireReportsMissingCoverage) {
  const auto& t = small_tables();
  EXPECT_NO_THROW(t.require(small_range()));
  auto wider = small_range();
  wider.n_max = 7;
  EXPECT_THROW(t.require(wider), genloc::DependencyError);
  auto other = small_range();
  other.R = 0.9;
  EXPECT_THROW(t.require(other), genloc::DependencyError);
}

TEST(LemmaTables, OwnersMatchDirectPartitions) {
  const auto& t = small_tables();
  const auto& pts = t.coeffs().points();
  for (std::size_t row = 0; row < pts.size(); ++row)
    for (Coord k = 1; k <= t.range().k_max; ++k) {
      const auto part = gl::build_partition(pts[row], k);
      const auto& own = t.owners(row)[static_cast<std::size_t>(k)];
      ASSERT_EQ(own.size(), part.owner.size());
      for (std::size_t p = 0; p < own.size(); ++p) EXPECT_EQ(own[p], part.owner[p]);
    }
}

// Brute-force left-hand sides through the per-coefficient accessors.
TEST(Constants, Coef2MatchesDirectSup) {
  const auto& t = small_tables();
  const auto& kc = t.coeffs();
  for (double l : {1.0, 4.0}) {
    double want = 0.0;
    for (const auto& n : kc.points())
      for (Coord j = 1; j <= t.range().max_j(); ++j)
        want = std::max(want, std::abs(gk::theta_coeff(kc, j, n)) *
                                  std::pow(1.0 + std::abs(norm_of(n) - std::sqrt(double(j))), l));
    EXPECT_NEAR(gv::coef2_constant(t, l), want, 1e-14 * want);
  }
}

TEST(Constants, LBigWAndBiglMatchDirectSums) {
  const auto& t = small_tables();
  const auto& kc = t.coeffs();
  const Coord J = t.range().max_j();
  double lbig = 0.0, w = 0.0, bigl = 0.0;
  for (const auto& n : kc.points()) {
    double a = 0.0, b = 0.0;
    for (Coord j = 0; j < J; ++j) {
      a += std::norm(gk::big_theta_coeff(kc, j, n));
      b += std::norm(gk::theta_coeff(kc, j, n));
    }
    lbig = std::max(lbig, a);
    w = std::max(w, b / std::max(1.0, norm_of(n)));
    for (Coord k = 0; k <= t.range().k_max; ++k) {
      double s = 0.0;
      for (Coord j = k * k; j < (k + 1) * (k + 1); ++j) s += std::norm(gk::big_theta_coeff(kc, j, n));
      bigl = std::max(bigl, s * std::pow(1.0 + std::abs(norm_of(n) - double(k)), 2.0));
    }
  }
  EXPECT_NEAR(gv::lbig_constant(t), lbig, 1e-14 * lbig);
  EXPECT_NEAR(gv::w_constant(t), w, 1e-14 * w);
  EXPECT_NEAR(gv::bigl_constant(t, 2.0), bigl, 1e-14 * bigl);
}

TEST(Constants, QSbiglLsmallMatchDirectPartitionSums) {
  const auto& t = small_tables();
  const auto& kc = t.coeffs();
  double q = 0.0, q_flat = 0.0, sb = 0.0, ls = 0.0;
  for (const auto& n : kc.points()) {
    if (n.is_zero()) continue;
    double sum_big = 0.0, sum_small = 0.0;
    for (Coord k = 1; k <= t.range().k_max; ++k) {
      const auto part = gl::build_partition(n, k);
      double block = 0.0;
      for (std::size_t qi = 0; qi < part.sets.size(); ++qi)
        for (Coord p : part.sets[qi]) {
          const double w = double(qi + 1) * double(qi + 1);
          block += w * std::norm(gk::big_theta_coeff(kc, k * k + p, n));
          sum_small += std::norm(gk::theta_coeff(kc, k * k + p, n)) / w;
        }
      sum_big += block;
      const double d = std::abs(norm_of(n) - double(k));
      q = std::max(q, block * std::pow(1.0 + std::sqrt(d), 2.0));
      q_flat = std::max(q_flat, block * std::pow(1.0 + d, 2.0));
    }
    sb = std::max(sb, sum_big);
    ls = std::max(ls, sum_small);
  }
  EXPECT_NEAR(gv::q_constant(t, 2.0, true), q, 1e-13 * q);
  EXPECT_NEAR(gv::q_constant(t, 2.0, false), q_flat, 1e-13 * q_flat);
  EXPECT_NEAR(gv::sbigl_constant(t), sb, 1e-13 * sb);
  EXPECT_NEAR(gv::lsmall_constant(t), ls, 1e-13 * ls);
}

TEST(Campaign, ExactIdentitiesPassOnSmallRange) {
  gv::Campaign c(small_range());
  for (const char* id : {"telescoping", "W2-identity", "tevzadze", "band-limit"}) {
    const auto rep = c.run(id);
    EXPECT_TRUE(rep.pass) << id << "\n" << gv::to_json(rep);
  }
}

TEST(Campaign, SumBoundHoldsOnSmallRange) {
  const auto rep = gv::verify_lemma("sum-bound", small_range());
  EXPECT_TRUE(rep.pass) << gv::to_json(rep);
}

TEST(Campaign, StabilityReportCarriesFormulaPerConstant) {
  const auto rep = gv::verify_lemma("coef2", small_range());
  ASSERT_EQ(rep.constants.size(), small_range().ls.size());
  bool all = true;
  for (const auto& c : rep.constants) {
    EXPECT_FALSE(c.formula.empty());
    EXPECT_DOUBLE_EQ(c.growth, c.doubled / c.base);
    EXPECT_EQ(c.pass, c.growth < 1.5);
    all = all && c.pass;
  }
  EXPECT_EQ(rep.pass, all);
}

TEST(Campaign, ThresholdDecidesVerdict) {
  gv::Thresholds strict;
  strict.growth = 0.5;  // no constant can shrink by half under doubling
  const auto rep = gv::verify_lemma("LBig", small_range(), strict);
  EXPECT_FALSE(rep.pass);
}

TEST(Campaign, UnknownLemmaRejected) {
  EXPECT_THROW(gv::verify_lemma("nope", small_range()), genloc::ParameterError);
}

TEST(Campaign, EveryIdIsKnown) {
  const auto& ids = gv::lemma_ids();
  EXPECT_EQ(ids.size(), 20u);
  for (const char* id : {"coef2", "bigl", "LBig", "W", "Q", "Sbigl", "Lsmall", "W2-identity", "sum-bound",
                         "MAX1-ratio", "ft", "INT", "cardinality", "min-norm", "tevzadze", "localization-series",
                         "localization-integral", "riesz-threshold"})
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
}

TEST(Json, DeterministicAndRuntimeFree) {
  const auto a = gv::verify_lemma("telescoping", small_range());
  const auto b = gv::verify_lemma("telescoping", small_range());
  const auto ja = gv::to_json(a);
  EXPECT_EQ(ja, gv::to_json(b));
  EXPECT_EQ(ja.find("runtime"), std::string::npos);
  EXPECT_NE(ja.find("\"schema_version\": 1"), std::string::npos);
  EXPECT_NE(ja.find("\"verdict\": \"pass\""), std::string::npos);
  const auto campaign = gv::to_json(std::vector<gv::VerificationReport>{a, b});
  EXPECT_NE(campaign.find("\"reports\""), std::string::npos);
}

TEST(Experiments, LocalizationSeriesSmallRun) {
  gv::SeriesLocalizationConfig cfg;
  cfg.trials = 3;
  cfg.n_max_base = 8;
  cfg.n_max_doubled = 12;
  cfg.grid = 64;
  cfg.trend_lambdas = {25, 50};
  const auto rep = gv::run_localization_series(cfg);
  EXPECT_EQ(rep.metrics.at("zero_field_max"), 0.0);
  EXPECT_EQ(rep.metrics.at("rerun_identical"), 1.0);
  ASSERT_TRUE(rep.traces.count("max1_ratio"));
  ASSERT_TRUE(rep.traces.count("series_trajectory"));
  EXPECT_EQ(gv::to_json(rep), gv::to_json(gv::run_localization_series(cfg)));
  cfg.trials = 0;
  EXPECT_THROW(gv::run_localization_series(cfg), genloc::ParameterError);
}

TEST(Experiments, RieszThresholdDefaults) {
  const auto rep = gv::run_riesz_thresholds({});
  EXPECT_TRUE(rep.pass) << gv::to_json(rep);
  EXPECT_LT(rep.metrics.at("calibration_slope"), -0.9);
  ASSERT_TRUE(rep.traces.count("riesz_probe"));
}

#pragma once

// Empirical verification campaign: lemma constants fitted on a scan range and
// on its doubling, exact identities, the assembled maximal bound, and the
// localization / threshold experiments.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "genloc/kernel.hpp"
#include "genloc/lattice.hpp"
#include "genloc/report.hpp"

namespace genloc::verify {

using lattice::Coord;

struct ScanRange {
  int dim = 2;
  Coord n_max = 24;
  Coord k_max = 12;
  std::vector<int> ls{1, 2, 4};
  double R = 1.0;
  double r = 0.5;
  /// Grid for the psi coefficient table.
  int grid = 1024;
  std::uint64_t seed = 7;
  int threads = 1;
  /// Random fields per range for the W2 identity and the assembled bound.
  int trials = 3;
  /// Integral side: the kernel-transform scan covers lambda, |eta| in
  /// [0, E] with step 0.5; the energy scan uses |eta| in {0, 4, .., E} and
  /// Lambda = 2E + 20.
  double transform_extent = 20.0;

  /// J = (k_max + 1)^2: shells j < J are exactly the blocks k <= k_max.
  Coord max_j() const { return (k_max + 1) * (k_max + 1); }
  ScanRange doubled() const;
  /// ParameterError on non-positive ranges or an invalid window.
  void validate() const;
};

/// Configurable pass thresholds.
struct Thresholds {
  double growth = 1.5;          // fitted constant, doubled / base
  double ratio_growth = 1.2;    // localization ratio, n_max doubled / base
  double trend_slack = 0.10;    // monotone trends
  double identity_tol = 1e-8;   // W2 identity, relative
  double exact_tol = 1e-12;     // telescoping, recombination
  double band_tol = 1e-10;      // band-limited exactness
  double bound_slack = 1e-6;    // assembled maximal bound, relative
  double lbig_spread = 10.0;    // max / min of the LBig sum over |n| <= 30
  double saturation = 0.05;     // lambda energy at Lambda vs 2 Lambda
};

struct FittedConstant {
  std::string name;
  std::string formula;
  double l = 0.0;  // weight exponent, 0 when not applicable
  double base = 0.0;
  double doubled = 0.0;
  double growth = 0.0;  // doubled / base
  bool pass = false;
};

struct VerificationReport {
  std::string lemma;
  ScanRange range;
  std::vector<FittedConstant> constants;
  /// Scalar diagnostics (residuals, counts, ratios) in key order.
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;
  /// Per-experiment traces keyed by file stem.
  std::map<std::string, report::CsvTable> traces;
  bool pass = false;
  /// Wall time; kept out of the JSON so reruns are byte-identical.
  double runtime_seconds = 0.0;
};

/// Every id accepted by verify_lemma, in campaign order.
const std::vector<std::string>& lemma_ids();

/// Coefficient tables and ring partitions for one scan range.
class LemmaTables {
 public:
  static std::shared_ptr<const LemmaTables> build(const ScanRange& range);

  const ScanRange& range() const { return range_; }
  const kernel::KernelCoeffs& coeffs() const { return coeffs_; }
  /// owner[k][p] = q of Q_q^k for table row `row`, k in 1..k_max. The n = 0
  /// row holds the degenerate fallback (everything in Q_0).
  const std::vector<std::vector<std::uint8_t>>& owners(std::size_t row) const { return owners_[row]; }
  /// Throws DependencyError unless the tables cover `range`.
  void require(const ScanRange& range) const;

 private:
  ScanRange range_;
  kernel::KernelCoeffs coeffs_;
  std::vector<std::vector<std::vector<std::uint8_t>>> owners_;
};

/// Runs one lemma id with lazily built, shared tables for the base range and
/// its doubling.
class Campaign {
 public:
  explicit Campaign(ScanRange range, Thresholds thresholds = {});

  const ScanRange& range() const { return range_; }
  const Thresholds& thresholds() const { return thresholds_; }
  const LemmaTables& base_tables();
  const LemmaTables& doubled_tables();

  /// ParameterError for an unknown id.
  VerificationReport run(const std::string& lemma);

 private:
  ScanRange range_;
  Thresholds thresholds_;
  std::shared_ptr<const LemmaTables> base_;
  std::shared_ptr<const LemmaTables> doubled_;
};

/// One-shot form of Campaign::run.
VerificationReport verify_lemma(const std::string& lemma, const ScanRange& range,
                                const Thresholds& thresholds = {});

// --- fitted left-hand sides on a fixed table set --------------------------

/// sup over 1 <= j <= J, |n| <= n_max of |(theta_j)_n| (1 + ||n| - sqrt j|)^l.
double coef2_constant(const LemmaTables& t, double l);
/// sup over n, k <= k_max of sum_{k <= sqrt j < k+1} |(Theta_j)_n|^2 (1 + ||n| - k|)^l.
double bigl_constant(const LemmaTables& t, double l);
/// sup over n of sum_{j < J} |(Theta_j)_n|^2.
double lbig_constant(const LemmaTables& t);
/// sup over n of sum_{j < J} |(theta_j)_n|^2 / max(1, |n|).
double w_constant(const LemmaTables& t);
/// sup over n != 0, 1 <= k <= k_max of
/// sum_q (q+1)^2 sum_{p in Q_q^k} |(Theta_{k^2+p})_n|^2 (1 + sqrt||n| - k|)^l,
/// or with (1 + ||n| - k|)^l when `root` is false.
double q_constant(const LemmaTables& t, double l, bool root = true);
/// sup over n != 0 of the k-sum of the Q left-hand side.
double sbigl_constant(const LemmaTables& t);
/// sup over n != 0 of sum_k sum_q (q+1)^{-2} sum_{p in Q_q^k} |(theta_{k^2+p})_n|^2.
double lsmall_constant(const LemmaTables& t);

// --- experiments ----------------------------------------------------------

struct SeriesLocalizationConfig {
  int trials = 100;
  Coord n_max_base = 16;
  Coord n_max_doubled = 32;
  double R = 1.0;
  double r = 0.5;
  int grid = 128;
  std::uint64_t seed = 7;
  /// Smooth annulus fixtures: block edges for the inner-ball trend. Block i
  /// reports the sup over lambda in [edges[i], edges[i+1]) of the inner-ball
  /// max; block sups must be non-increasing within the slack.
  std::vector<double> trend_lambdas{25, 50, 100, 200, 400};
  int threads = 1;
};
VerificationReport run_localization_series(const SeriesLocalizationConfig& config,
                                           const Thresholds& thresholds = {});

struct IntegralLocalizationConfig {
  double R = 1.0;
  double r = 0.5;
  double A = 1.5;
  /// Block edges, as for the series trend; each block is sampled on
  /// `block_samples` geometric nodes.
  std::vector<double> lambdas{25, 50, 100, 200};
  int block_samples = 6;
  int threads = 1;
};
VerificationReport run_localization_integral(const IntegralLocalizationConfig& config,
                                             const Thresholds& thresholds = {});

struct RieszProbeSpec {
  double s = 0.0;
  std::vector<int> alpha;  // empty: delta itself
  /// Sobolev index l of the target; s >= l must decay.
  double l = 0.0;
};
struct RieszThresholdConfig {
  int dim = 2;
  double x_norm = 0.5;
  double lambda0 = 4.0;
  double ratio = 1.5;
  std::size_t count = 12;
  std::vector<RieszProbeSpec> specs{{0.0, {}, 1.5}, {0.5, {}, 1.5}, {1.0, {}, 1.5},
                                    {2.0, {}, 1.5}, {3.0, {}, 1.5}, {3.0, {1, 0}, 2.5}};
};
VerificationReport run_riesz_thresholds(const RieszThresholdConfig& config);

/// Verdict JSON (schema report::kJsonSchemaVersion), without runtime.
std::string to_json(const VerificationReport& report);
/// {"schema_version", "reports": [...], "verdict"} for a campaign.
std::string to_json(const std::vector<VerificationReport>& reports);

}  // namespace genloc::verify

#pragma once

#include <array>
#include <string>

#include "genloc/verification.hpp"

namespace genloc::verify::detail {

/// Exhaustive partition scan over N in {2,3}, 1 <= k <= 15, 0 < |n| <= 30.
struct PartitionScan {
  std::size_t sets_checked = 0;
  /// (n, k) whose sets fail to partition {0, .., 2k} or disagree with owner.
  std::size_t cover_violations = 0;
  std::size_t card_violations = 0;
  std::array<std::size_t, 2> card_violations_by_dim{};
  std::size_t points_checked = 0;
  std::size_t norm_violations = 0;
  std::size_t norm_violations_all = 0;
  std::string first_card_violation;
  std::string first_norm_violation;
};

/// Computed once per process.
const PartitionScan& partition_scan(int threads);
void partition_scan_report(VerificationReport& rep, const std::string& id, int threads);

/// Kernel-transform decay ("ft") and lambda-energy ("INT") scans.
void transform_report(VerificationReport& rep, const std::string& id, const ScanRange& range,
                      const Thresholds& th);

void max1_ratio(VerificationReport& rep, const SeriesLocalizationConfig& cfg, const Thresholds& th);
void series_trend(VerificationReport& rep, const SeriesLocalizationConfig& cfg, const Thresholds& th);

}  // namespace genloc::verify::detail

#pragma once

// CSV tables shared by the CLI, the verification campaign and the plotting
// scripts. Files carry `# key=value` metadata lines, then one header row.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace genloc::report {

/// Verdict JSON layout version; bumped only when an existing field changes.
inline constexpr int kJsonSchemaVersion = 1;

struct CsvTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Appends a row; InputError when the width differs from the header.
  void add(std::vector<std::string> row);
  std::size_t column(const std::string& name) const;
};

/// Shortest round-trip decimal for doubles, plain digits for integers.
std::string cell(double v);
std::string cell(std::int64_t v);
inline std::string cell(int v) { return cell(static_cast<std::int64_t>(v)); }
inline std::string cell(std::size_t v) { return cell(static_cast<std::int64_t>(v)); }
inline std::string cell(const std::string& v) { return v; }
inline std::string cell(const char* v) { return v; }

void write_csv(std::ostream& out, const CsvTable& table);
/// Parses the layout written by write_csv (InputError on ragged rows).
CsvTable read_csv(std::istream& in);

/// InputError naming every expected column that is absent.
void require_columns(const CsvTable& table, const std::vector<std::string>& expected);

namespace schema {

/// N, R, r, M, j, n1..nN, re, im
std::vector<std::string> coefficients(int dim);
/// N, lambda, eta_norm, l, weighted_abs
std::vector<std::string> decay_scan();
/// N, s, alpha, lambda, x1..xN, re, im, abs, envelope
std::vector<std::string> riesz_probe(int dim);
/// trial, n_max, ratio
std::vector<std::string> ratio();
/// fixture, lambda, inner_max
std::vector<std::string> trajectory();
/// j, m1..mN
std::vector<std::string> lattice_points(int dim);
/// trial, lambda, x1..xN, re, im, abs
std::vector<std::string> partial_sum(int dim);
/// N, j, count
std::vector<std::string> shell_counts();
/// N, n1..nN, k, q, p, tag
std::vector<std::string> partition(int dim);

}  // namespace schema

}  // namespace genloc::report

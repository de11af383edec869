#include "genloc/report.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "genloc/errors.hpp"

namespace genloc::report {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<std::string> with_axes(std::vector<std::string> head, const std::string& prefix, int dim,
                                   std::vector<std::string> tail) {
  for (int a = 1; a <= dim; ++a) head.push_back(prefix + std::to_string(a));
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != columns.size())
    throw InputError("row has " + std::to_string(row.size()) + " cells, header has " +
                     std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw InputError("no column named " + name);
}

std::string cell(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string cell(std::int64_t v) { return std::to_string(v); }

void write_csv(std::ostream& out, const CsvTable& table) {
  for (const auto& [k, v] : table.meta) out << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto body = line.substr(line.find_first_not_of("# "));
      const auto eq = body.find('=');
      t.meta.emplace_back(body.substr(0, eq), eq == std::string::npos ? "" : body.substr(eq + 1));
      continue;
    }
    if (!header) {
      t.columns = split(line);
      header = true;
      continue;
    }
    t.add(split(line));
  }
  if (!header) throw InputError("CSV has no header row");
  return t;
}

void require_columns(const CsvTable& table, const std::vector<std::string>& expected) {
  std::string missing;
  for (const auto& c : expected) {
    bool found = false;
    for (const auto& have : table.columns) found = found || have == c;
    if (!found) missing += (missing.empty() ? "" : ", ") + c;
  }
  if (!missing.empty()) throw InputError("missing columns: " + missing);
}

namespace schema {

std::vector<std::string> coefficients(int dim) { return with_axes({"N", "R", "r", "M", "j"}, "n", dim, {"re", "im"}); }

std::vector<std::string> decay_scan() { return {"N", "lambda", "eta_norm", "l", "weighted_abs"}; }

std::vector<std::string> riesz_probe(int dim) {
  return with_axes({"N", "s", "alpha", "lambda"}, "x", dim, {"re", "im", "abs", "envelope"});
}

std::vector<std::string> ratio() { return {"trial", "n_max", "ratio"}; }

std::vector<std::string> trajectory() { return {"fixture", "lambda", "inner_max"}; }

std::vector<std::string> lattice_points(int dim) { return with_axes({"j"}, "m", dim, {}); }

std::vector<std::string> partial_sum(int dim) { return with_axes({"trial", "lambda"}, "x", dim, {"re", "im", "abs"}); }

std::vector<std::string> shell_counts() { return {"N", "j", "count"}; }

std::vector<std::string> partition(int dim) { return with_axes({"N"}, "n", dim, {"k", "q", "p", "tag"}); }

}  // namespace schema

}  // namespace genloc::report

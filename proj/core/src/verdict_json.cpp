#include <json.hpp>

#include "genloc/verification.hpp"

namespace genloc::verify {

namespace {

using json = nlohmann::ordered_json;

json range_json(const ScanRange& r) {
  return json{{"N", r.dim},           {"n_max", r.n_max}, {"k_max", r.k_max}, {"J", r.max_j()},
              {"l", r.ls},            {"R", r.R},         {"r", r.r},         {"M", r.grid},
              {"seed", r.seed},       {"trials", r.trials}, {"transform_extent", r.transform_extent}};
}

json report_json(const VerificationReport& rep) {
  json j;
  j["schema_version"] = report::kJsonSchemaVersion;
  j["lemma"] = rep.lemma;
  j["verdict"] = rep.pass ? "pass" : "fail";
  j["range"] = range_json(rep.range);
  j["doubled_range"] = range_json(rep.range.doubled());
  json cs = json::array();
  for (const auto& c : rep.constants)
    cs.push_back({{"name", c.name},
                  {"formula", c.formula},
                  {"l", c.l},
                  {"base", c.base},
                  {"doubled", c.doubled},
                  {"growth", c.growth},
                  {"pass", c.pass}});
  j["constants"] = cs;
  json m = json::object();
  for (const auto& [k, v] : rep.metrics) m[k] = v;
  j["metrics"] = m;
  j["notes"] = rep.notes;
  json traces = json::array();
  for (const auto& [name, t] : rep.traces) traces.push_back(name);
  j["traces"] = traces;
  return j;
}

}  // namespace

std::string to_json(const VerificationReport& report) { return report_json(report).dump(2) + "\n"; }

std::string to_json(const std::vector<VerificationReport>& reports) {
  json j;
  j["schema_version"] = report::kJsonSchemaVersion;
  bool pass = true;
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back(report_json(r));
    pass = pass && r.pass;
  }
  j["verdict"] = pass ? "pass" : "fail";
  j["reports"] = arr;
  return j.dump(2) + "\n";
}

}  // namespace genloc::verify

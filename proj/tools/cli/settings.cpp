#include "settings.hpp"

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "genloc/errors.hpp"

namespace genloc::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError("bad value for " + key + ": '" + v + "'");
  return out;
}

}  // namespace

Settings::Settings(std::string command, std::vector<KeySpec> keys)
    : command_(std::move(command)), keys_(std::move(keys)) {}

void Settings::bind(CLI::App& app) {
  for (const auto& k : keys_) {
    auto& slot = flags_[k.name];
    app.add_option("--" + k.name, slot, k.help + (k.fallback.empty() ? "" : " [" + k.fallback + "]"))
        ->each([this, name = k.name](const std::string&) { flag_given_[name] = true; });
  }
}

void Settings::load_ini(const std::filesystem::path& path, const std::vector<std::string>& known_sections) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("config key outside a section: " + section);
    if (section == "tool") continue;  // manifest header
    bool known = section == "run";
    for (const auto& s : known_sections) known = known || s == section;
    if (!known) throw ConfigError("unknown config section [" + section + "]");
    if (section != "run" && section != command_) continue;
    for (const auto& [key, value] : body) {
      bool found = false;
      for (const auto& k : keys_) found = found || k.name == key;
      // Common keys live in [run]; any other key there must belong to some
      // subcommand, so only the current command's section is strict.
      if (!found && section == command_) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
      if (found) file_[key] = value.data();
    }
  }
}

const KeySpec& Settings::spec(const std::string& key) const {
  for (const auto& k : keys_)
    if (k.name == key) return k;
  throw ConfigError("internal: no key " + key);
}

bool Settings::is_set(const std::string& key) const {
  spec(key);
  return flag_given_.count(key) || file_.count(key);
}

std::string Settings::text(const std::string& key) const {
  const auto& k = spec(key);
  if (flag_given_.count(key)) return flags_.at(key);
  if (auto it = file_.find(key); it != file_.end()) return it->second;
  return k.fallback;
}

long long Settings::integer(const std::string& key) const { return parse_number<long long>(key, text(key)); }

double Settings::real(const std::string& key) const { return parse_number<double>(key, text(key)); }

bool Settings::flag(const std::string& key) const {
  const auto v = text(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off" || v.empty()) return false;
  throw ConfigError("bad boolean for " + key + ": '" + v + "'");
}

std::vector<double> Settings::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& part : split(text(key), ',')) out.push_back(parse_number<double>(key, part));
  return out;
}

std::vector<long long> Settings::integers(const std::string& key) const {
  std::vector<long long> out;
  for (const auto& part : split(text(key), ',')) out.push_back(parse_number<long long>(key, part));
  return out;
}

std::vector<std::vector<double>> Settings::points(const std::string& key) const {
  std::vector<std::vector<double>> out;
  for (const auto& p : split(text(key), ';')) {
    std::vector<double> x;
    for (const auto& c : split(p, ',')) x.push_back(parse_number<double>(key, c));
    out.push_back(std::move(x));
  }
  return out;
}

std::map<std::string, std::string> Settings::resolved() const {
  std::map<std::string, std::string> out;
  for (const auto& k : keys_) out[k.name] = text(k.name);
  return out;
}

std::filesystem::path output_dir(const Settings& s) {
  std::filesystem::path root = ".";
  if (const char* env = std::getenv("GENLOC_OUTPUT_ROOT"); env && *env) root = env;
  return root / s.text("output");
}

void write_manifest(const std::filesystem::path& dir, const Settings& s,
                    const std::vector<std::pair<std::string, std::string>>& extra) {
  std::ofstream out(dir / (s.command() + ".manifest"));
  if (!out) throw Error("cannot write manifest in " + dir.string());
  out << "[tool]\nname=genloc\nversion=" << GENLOC_VERSION << "\ncommand=" << s.command() << '\n';
  for (const auto& [k, v] : extra) out << k << '=' << v << '\n';
  out << "\n[" << s.command() << "]\n";
  for (const auto& [k, v] : s.resolved()) out << k << '=' << v << '\n';
}

}  // namespace genloc::cli

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace genloc::cli {

struct KeySpec {
  std::string name;
  std::string fallback;
  std::string help;
};

/// Resolved run configuration for one subcommand: flag, then config file,
/// then built-in default. Every accessor throws ConfigError on bad input.
class Settings {
 public:
  Settings(std::string command, std::vector<KeySpec> keys);

  const std::string& command() const { return command_; }

  /// Adds one --key option per spec to `app`.
  void bind(CLI::App& app);
  /// Reads the [run] and [<command>] sections; undeclared keys and
  /// unknown sections are rejected.
  void load_ini(const std::filesystem::path& path, const std::vector<std::string>& known_sections);

  std::string text(const std::string& key) const;
  bool is_set(const std::string& key) const;
  long long integer(const std::string& key) const;
  double real(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<long long> integers(const std::string& key) const;
  /// "x1,x2;y1,y2" point lists.
  std::vector<std::vector<double>> points(const std::string& key) const;

  std::map<std::string, std::string> resolved() const;

 private:
  const KeySpec& spec(const std::string& key) const;

  std::string command_;
  std::vector<KeySpec> keys_;
  std::map<std::string, std::string> flags_;
  std::map<std::string, bool> flag_given_;
  std::map<std::string, std::string> file_;
};

/// Output directory: GENLOC_OUTPUT_ROOT (or the working directory) joined
/// with the `output` key.
std::filesystem::path output_dir(const Settings& s);

/// Writes <dir>/<command>.manifest with the tool version and resolved keys.
void write_manifest(const std::filesystem::path& dir, const Settings& s,
                    const std::vector<std::pair<std::string, std::string>>& extra = {});

}  // namespace genloc::cli

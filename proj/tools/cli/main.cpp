#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "genloc/errors.hpp"

int main(int argc, char** argv) {
  using namespace genloc::cli;
  CLI::App app{"genloc: localization experiments for spherical partial sums and integrals"};
  app.set_version_flag("--version", GENLOC_VERSION);
  app.require_subcommand(1);

  const auto cmds = commands();
  std::vector<std::string> sections;
  for (const auto& c : cmds) sections.push_back(c.name);

  std::vector<Settings> settings;
  settings.reserve(cmds.size());
  std::vector<std::string> configs(cmds.size()), args(cmds.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    auto* sub = app.add_subcommand(cmds[i].name, cmds[i].help);
    settings.emplace_back(cmds[i].name, cmds[i].keys);
    settings.back().bind(*sub);
    sub->add_option("--config", configs[i], "INI file with [run] and [" + cmds[i].name + "] sections")
        ->check(CLI::ExistingFile);
    if (!cmds[i].positional.empty()) sub->add_option("target", args[i], cmds[i].positional)->required();
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  for (std::size_t i = 0; i < cmds.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      if (!configs[i].empty()) settings[i].load_ini(configs[i], sections);
      return cmds[i].run(settings[i], args[i]);
    } catch (const genloc::ConfigError& e) {
      std::cerr << "configuration error: " << e.what() << '\n';
      return usage;
    } catch (const genloc::ParameterError& e) {
      std::cerr << "invalid parameter: " << e.what() << '\n';
      return usage;
    } catch (const genloc::InputError& e) {
      std::cerr << "invalid input: " << e.what() << '\n';
      return usage;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return failure;
    }
  }
  return usage;
}

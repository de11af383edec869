#pragma once

#include <functional>
#include <string>
#include <vector>

#include "settings.hpp"

namespace genloc::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2, verdict_fail = 3 };

struct Command {
  std::string name;
  std::string help;
  std::vector<KeySpec> keys;
  /// Help text of the positional argument; empty when there is none.
  std::string positional;
  std::function<int(const Settings&, const std::string& arg)> run;
};

std::vector<Command> commands();

}  // namespace genloc::cli

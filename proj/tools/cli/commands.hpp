#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace semigrav::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct KeySpec {
  std::string name;
  std::string help;
};

const std::vector<std::string>& command_names();
std::string command_help(const std::string& command);

// Per-command parameters accepted on the command line and in config files.
// The shared keys out, seed, svg and command are not listed.
const std::vector<KeySpec>& command_keys(const std::string& command);

// Validates, dispatches and writes artifacts. Config problems surface as
// ConfigError; numerical aborts return kExitNumerical after writing partial output.
int run(const RunConfig& config, std::ostream& log);

}  // namespace semigrav::cli

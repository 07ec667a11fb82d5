#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qrep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSuiteFailure = 1;
inline constexpr int kExitInputError = 2;

// Environment variable naming the config file used when --config is absent.
inline constexpr const char* kConfigEnvVar = "REPEATER_CONFIG";

// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrep::cli

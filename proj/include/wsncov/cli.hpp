#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wsncov::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConvergence = 2;
inline constexpr int kExitIo = 3;

/// Seed used when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Environment variable naming the default directory for figure outputs.
inline constexpr const char* kOutputDirEnv = "WSNCOV_OUTPUT_DIR";

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code. Results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wsncov::cli

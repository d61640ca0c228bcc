#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lfr::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker cap from APP_THREADS; 0 (all hardware threads) when unset or invalid.
unsigned threads_from_env();

}  // namespace lfr::cli

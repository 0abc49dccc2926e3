#pragma once

#include <iosfwd>

namespace orbital_cli {

// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvariant = 2;

/// Parses argv, runs one subcommand and writes the report to `out` (or to
/// the --output file). Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orbital_cli

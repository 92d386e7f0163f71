#pragma once

#include <ostream>

namespace horadam {

// Exit status contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

// Entry point for the horadam-verify tool. Output goes to `out` unless
// --out names a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace horadam

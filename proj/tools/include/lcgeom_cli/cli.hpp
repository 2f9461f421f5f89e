#pragma once

#include <iosfwd>

namespace lcg::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs the lcgeom command line with the given arguments. Regular output
/// goes to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lcg::cli

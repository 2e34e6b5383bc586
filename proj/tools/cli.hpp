#pragma once

#include <ostream>

namespace ivpp::cli {

/// Exit codes: 0 success, 1 verification or derivation failure, 2 usage or
/// configuration error.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kUsage = 2;

/// Runs the command line `argv` (argv[0] is the program name). Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ivpp::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace biharm::cli {

// exit codes of `verify`; other commands use 0 / kExitError
inline constexpr int kExitMatch = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitInconclusive = 3;

/// Runs the command line (args exclude the program name). Reports go to `out`
/// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biharm::cli

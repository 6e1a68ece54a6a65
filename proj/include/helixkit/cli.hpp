#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace helixkit::cli {

/// Exit codes: math-level problems are kept apart from I/O failures.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitDegenerate = 2;

/// Runs the `helixkit` command line. Output goes to `out` unless --output is
/// given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace helixkit::cli

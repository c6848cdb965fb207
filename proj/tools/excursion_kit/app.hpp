#pragma once

#include <iosfwd>

namespace exkit::cli {

/// Parses argv, runs the selected subcommand and returns the exit code:
/// 0 success, 2 usage error, 1 data or numerical error.
int run(int argc, const char* const* argv);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace exkit::cli

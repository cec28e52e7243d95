#pragma once

#include <iosfwd>

namespace cvsteer::cli {

/// Parses argv and runs one subcommand. Returns the process exit code:
/// 0 success, 1 runtime failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cvsteer::cli

#pragma once

#include <iosfwd>

namespace olab {

/// Runs the `olab` command line. Exit status: 0 success, 2 parse or config
/// error, 3 domain or parameter error, 4 unrepresentable ball, 1 otherwise.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace olab

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heun::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitBreakdown = 3,
  kExitVerificationFailure = 4,
};

// Runs the heunx command line.  The JSON (or CSV) document goes to `out`
// unless --output names a file; human-readable diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

// Convenience for tests: argv[0] is supplied.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace heun::cli

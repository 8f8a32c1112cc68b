#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cpcf::cli {

// Runs one command-line invocation. `argv[0]` is the program name; results
// go to `out`, diagnostics to `err`. Returns the process exit code:
//   0  true / success / all checks passed
//   1  false / validation violations / check failures
//   2  input error (bad flags, unreadable model, parse failure)
//   3  translation budget exceeded
int run(const std::vector<std::string>& argv, std::ostream& out,
        std::ostream& err);

}  // namespace cpcf::cli

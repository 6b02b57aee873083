#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stabpres::cli {

/// Exit codes.
enum Exit : int {
  kOk = 0,
  kFailed = 1,         // validation or certificate failure
  kResourceBound = 2,  // coset table or contraction budget exhausted
  kMalformed = 3,      // bad flags, unreadable or malformed input
};

/// Runs one invocation; `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stabpres::cli

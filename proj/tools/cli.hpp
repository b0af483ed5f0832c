#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nvfix::cli {

enum ExitCode : int {
  kOk = 0,
  kAssertionFailed = 1,
  kUsage = 2,
  kInadmissible = 3,
};

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nvfix::cli

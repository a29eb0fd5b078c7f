#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cdp::cli {

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kUsage = 2,
  kParse = 3,
  kRefusal = 4,
  kInternal = 70,
};

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdp::cli

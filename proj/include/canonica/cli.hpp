#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace canonica::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,  // selftest criteria failed
  kPrecondition = 2,
  kParse = 3,
  kNumerical = 4,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace canonica::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dialogic::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kConfig = 2,
  kBackend = 3,
  kNoDialogues = 4,
};

/// Runs one command line (without the program name). Data goes to `out`,
/// progress and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dialogic::cli

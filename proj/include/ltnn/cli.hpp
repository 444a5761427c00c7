#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ltnn::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kRefused = 2,
  kMismatch = 3,
  kBoundViolated = 4,
};

/// Runs the ltnn command line. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "2,1" -> {2, 1}. Throws InputError.
std::vector<std::size_t> parse_widths(const std::string& text);

}  // namespace ltnn::cli

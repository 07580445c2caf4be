#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cornerq::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsage = 2,
  kConstraintViolation = 3,
};

/// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cornerq::cli

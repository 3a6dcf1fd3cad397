#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gnk::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,          ///< success, Equal, PASS
  kDistinct = 1,
  kUsage = 2,       ///< parse, validation and parameter errors
  kUnknown = 3,     ///< equality search budget exhausted
  kGeometry = 4,    ///< scan or construction failure
  kAssertion = 5,   ///< experiment postcondition violated
};

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gnk::cli

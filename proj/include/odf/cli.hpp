#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace odf::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kSuccess = 0,
  /// Unparsable input, bad usage, or input that fails validation.
  kInputError = 1,
  /// Well-formed input on which the computation fails (NotCoherent, ...).
  kMathError = 2,
};

/// Runs one command. `args` excludes the program name. Results go to `out`;
/// in text mode errors go to `err`, with `--json` they go to `out` as a
/// structured object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace odf::cli

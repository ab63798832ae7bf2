#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hlearn {

enum ExitStatus : int {
  kExitOk = 0,
  kExitInvalidInput = 1,
  kExitTheoryViolation = 2,
  kExitUsage = 64,
};

/// Runs one command line (without the program name). Results go to `out`
/// unless --out redirects them; diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hlearn

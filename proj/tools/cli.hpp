#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orbitns::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kIdentityFailure = 3,
  kDiverged = 4,
};

/// Runs one command line (args excludes the program name). Results go to `out`
/// unless --out is given; messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbitns::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subplanck::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,          // usage or validation error
  kNotApplicable = 3,  // analysis not applicable (e.g. no ringing)
  kDomain = 4,         // numerical-domain violation
};

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace subplanck::cli

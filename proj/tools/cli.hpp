#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace socnet::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kConvergence = 3 };

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace socnet::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace randfusion::cli {

/// Runs one CLI invocation; `args` excludes the program name. Returns the exit
/// code: 0 success, 1 validation error, 2 runtime error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace randfusion::cli

#pragma once

#include <string>
#include <vector>

namespace acclab {

// Full command-line driver. `args` excludes the program name. Returns the
// process exit code: 0 success, 1 runtime/validation failure, 2 usage error.
int run_cli(const std::vector<std::string>& args);

}  // namespace acclab

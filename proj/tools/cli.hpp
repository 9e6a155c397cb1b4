// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ymx::cli {

enum ExitCode { kOk = 0, kValidation = 1, kRefusal = 2, kCrosscheckFailure = 3, kInternal = 4 };

// Parses `args` (without the program name), dispatches, writes JSON to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ymx::cli

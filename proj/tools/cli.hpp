#pragma once

#include <iosfwd>

namespace rootrefine::cli {

enum ExitCode : int { kSuccess = 0, kInputError = 1, kPartialFailure = 2 };

/// Full command-line run. The result document goes to --output or `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rootrefine::cli

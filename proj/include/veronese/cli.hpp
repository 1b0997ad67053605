#pragma once

#include <string>
#include <vector>

namespace veronese::cli {

/// Runs the vtube command line. Returns the process exit code: 0 on success,
/// 2 on validation or usage errors, 3 when --strict is set and the solver
/// reports non-convergence.
int run(int argc, const char* const* argv);

/// Same, for tests: args exclude the program name.
int run(const std::vector<std::string>& args);

}  // namespace veronese::cli

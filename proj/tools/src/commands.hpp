#pragma once

#include "run_config.hpp"

namespace cvqkd::cli {

// Dispatches the parsed configuration to the compute modules and emits the
// result. Returns the process exit code: 0 on success, 1 on numerical
// non-convergence or a failed consistency check.
int run_command(RunConfig cfg);

}  // namespace cvqkd::cli

#pragma once

namespace microgrid {

/// Entry point behind the mgsim binary. Exit codes: 0 success, 1 usage error,
/// 2 scenario validation error, 3 runtime failure (averaging non-convergence,
/// topology generation, I/O).
int cli_main(int argc, const char* const* argv);

}  // namespace microgrid

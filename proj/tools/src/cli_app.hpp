#pragma once

namespace umbrella {

/// Entry point of the umbrella tool; returns the process exit code
/// (0 success, 1 validation failure, 2 verification failure).
int run_cli(int argc, const char* const* argv);

}  // namespace umbrella

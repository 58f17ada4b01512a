#pragma once

#include <iosfwd>

namespace fnls {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitCompute = 2 };

/// Entry point of the fnls tool; returns the process exit status.
/// Artifacts without --out go to `out`; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fnls

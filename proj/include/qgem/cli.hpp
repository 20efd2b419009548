#pragma once

#include <iosfwd>

namespace qgem::cli {

enum ExitCode : int { kOk = 0, kNoCrossing = 1, kUsage = 2 };

/// Entry point behind the qgem binary. Results go to `out`, diagnostics to
/// `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace qgem::cli

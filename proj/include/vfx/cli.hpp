#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vfx::cli {

enum ExitCode : int {
    ok = 0,
    usage = 2,
    validation = 3,
    io = 4,
};

/// Runs `vfxgen` with argv-style arguments (args[0] is the program name).
/// Machine-readable output goes to `out`, diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vfx::cli

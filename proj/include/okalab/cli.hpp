#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace okalab::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,         // unknown subcommand or flag
    kPrecondition = 2,  // invalid parameters or malformed config
    kNumerical = 3,     // winding rejection, certification failure
};

/// Runs one subcommand. `args` excludes the program name. The result
/// document goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace okalab::cli

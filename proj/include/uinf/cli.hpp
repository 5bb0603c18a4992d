#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace uinf::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2 };

/// Runs the `uinf` command line; `args` excludes the program name. Reports
/// go to files named by --out/--csv or to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uinf::cli

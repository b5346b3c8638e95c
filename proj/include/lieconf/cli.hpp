#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lieconf::cli {

/// Runs the command line (without the program name). Output goes to `out`,
/// diagnostics to `err`. Exit codes: 0 all-pass, 1 a check failed,
/// 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lieconf::cli

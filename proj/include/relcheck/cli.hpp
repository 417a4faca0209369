#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relcheck {

// Runs one command-line invocation; `args` excludes the program name.
// Reports go to `out`, diagnostics to `err`. Exit codes: 0 verdict true /
// verification passed / computation done, 1 verdict false or failed step,
// 2 usage or input error, 3 inconclusive (fuel or capacity).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace relcheck

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oxy {

// Full command-line driver, in-process for testability. args excludes the
// program name. Exit codes: 0 success, 1 comparison out of tolerance,
// 2 usage/invalid parameters, 3 solver failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace oxy

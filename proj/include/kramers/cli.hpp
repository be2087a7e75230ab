#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kramers {

/// Exit codes: 0 success, 1 validation error (bad arguments, malformed
/// config, violated precondition), 2 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

} // namespace kramers

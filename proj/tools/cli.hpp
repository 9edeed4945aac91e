#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wiresafe {

/// Runs the command line `args` (without the program name). Returns the exit
/// status: 0 success or SECURE, 1 usage error, 2 INSECURE or infeasible.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace wiresafe

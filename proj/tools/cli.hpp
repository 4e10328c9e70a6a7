#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace roughcpd::cli {

/// Runs one command line (without the program name). Data goes to `out`
/// unless --output is given; diagnostics go to `err`.
/// Returns 0 on success, 2 on usage errors and 1 on runtime errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace roughcpd::cli

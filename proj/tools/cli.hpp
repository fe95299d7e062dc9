#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lgtrack::cli {

/// Runs the command line. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lgtrack::cli

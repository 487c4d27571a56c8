#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graphcx::cli {

/// Runs one command line (without the program name). Returns the exit
/// status; errors go to err as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphcx::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bwm::cli {

/// Runs one command. `args` excludes the program name. Returns the exit
/// code: 0 success, 1 invalid input or usage, 2 verification mismatch.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bwm::cli

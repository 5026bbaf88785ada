#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace catkit::cli {

enum Exit : int { exit_pass = 0, exit_failed = 1, exit_usage = 2, exit_size_cap = 3 };

// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace catkit::cli

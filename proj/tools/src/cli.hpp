#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tcensus::cli {

enum ExitCode { kOk = 0, kUsage = 1, kInvariant = 2 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcensus::cli

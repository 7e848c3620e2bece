#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tropref::cli {

enum ExitCode { Ok = 0, Inconsistent = 1, Malformed = 2, EmptyPuncturing = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropref::cli

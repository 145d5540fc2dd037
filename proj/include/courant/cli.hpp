#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace courant {

// Runs one command line (without the program name).  Exit codes: 0 when
// every check passes, 1 on a failed check, 2 on malformed input or usage,
// 3 when an input violates a precondition.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace courant

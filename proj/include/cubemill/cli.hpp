#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cubemill {

// Exit codes: 0 success or clean report, 1 property failure, 2 usage or input
// error. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubemill

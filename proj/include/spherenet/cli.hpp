#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spherenet {

// Entry point of the spherenet command-line tool. args[0] is the program name.
// Exit codes: 0 success, 1 domain or runtime failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spherenet

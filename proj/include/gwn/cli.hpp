#pragma once

#include <iosfwd>

namespace gwn {

// Exit codes of the command-line front end.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gwn

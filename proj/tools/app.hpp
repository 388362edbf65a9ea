#pragma once

#include <iosfwd>

namespace plr {

// Exit codes: 0 ok, 1 residual or numerical failure, 2 invalid input, 3 IO error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace plr

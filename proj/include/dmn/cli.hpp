#pragma once

#include <map>
#include <ostream>
#include <string>
#include <string_view>

namespace dmn {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFinding = 1;  // incorrect table, or hit policy violated
inline constexpr int kExitUsage = 2;    // bad arguments, unreadable or malformed input

// Splits "name=value,name=value". Values may be double-quoted to hold commas.
std::map<std::string, std::string> parse_assignments(std::string_view text);

// Runs one command: check, eval, generate or bench.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dmn

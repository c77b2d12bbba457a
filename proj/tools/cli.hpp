#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bots::cli {

/// Runs one subcommand; `args` excludes the program name. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace bots::cli

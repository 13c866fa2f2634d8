#pragma once

#include <exception>
#include <ostream>
#include <string>
#include <vector>

namespace hmpz::cli {

// Parses arguments, runs one subcommand and returns the process exit status.
// Errors go to err as a single line of JSON.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// {"error":{"kind","type","message"},"exit_code"} for any exception, plus its exit code.
std::string error_json(const std::exception& e, int& exit_code);

}  // namespace hmpz::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinpoint::cli {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on invalid input and 2 on numerical failure. Results go to `out`;
/// errors go to `err` as {"error": code, "message": text}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinpoint::cli

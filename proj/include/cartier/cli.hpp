#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cartier/error.hpp"

namespace cartier::cli {

/// 2 for usage, domain and syntax errors, 3 for resource caps, 4 for
/// invariant violations.
int exit_code(ErrorKind kind);

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace cartier::cli

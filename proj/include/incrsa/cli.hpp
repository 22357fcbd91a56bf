#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace incrsa::cli {

// Runs one subcommand. Exit codes: 0 success, 1 golden-suite failure,
// 2 input/validation error, 3 domain-query error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace incrsa::cli

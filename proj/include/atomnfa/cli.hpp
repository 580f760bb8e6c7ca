#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace atomnfa {

/// Command-line front end. Exit status: 0 success / mathematical yes,
/// 1 mathematical no, 2 input error, 3 budget exhaustion.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace atomnfa

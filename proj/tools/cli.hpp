#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zp2::cli {

// exit codes: 0 success, 1 internal verification failure, 2 validation error
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zp2::cli

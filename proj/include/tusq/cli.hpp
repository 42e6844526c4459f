#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tusq {

/// Exit codes: 0 success, 1 usage error, 2 parse error, 3 target absent,
/// 4 verify mismatch.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tusq

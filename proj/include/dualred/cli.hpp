#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualred {

/// Exit codes: 0 success, 1 analysis refusal, 2 usage, I/O or parse error,
/// 3 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualred

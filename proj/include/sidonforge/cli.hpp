#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sidonforge {

// Full command-line front end, callable in-process for tests. `args` excludes
// the program name. Exit codes: 0 success, 1 failed verification claim,
// 2 parse/validation errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sidonforge

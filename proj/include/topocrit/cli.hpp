#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topocrit::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes: 0 success, 1 usage or numerical error, 2 gap closing hit in --strict mode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topocrit::cli

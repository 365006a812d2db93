#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pathlaw::cli {

// Exit codes.
inline constexpr int ok = 0;
inline constexpr int usage_error = 1;
inline constexpr int data_error = 2;
inline constexpr int numeric_error = 3;

// Entry point for the pathlaw tool; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pathlaw::cli

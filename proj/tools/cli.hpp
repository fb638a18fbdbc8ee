#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cdst::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kInvalid = 2;
inline constexpr int kInternal = 3;

/// Runs one command line (args[0] is the program name). Tables and JSON go
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdst::cli

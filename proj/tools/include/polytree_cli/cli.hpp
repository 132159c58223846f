#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polytree::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitRefused = 2;

/// Runs one command line (without the program name). Records go to `out`
/// unless redirected with --out; diagnostics and warnings go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polytree::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace perphylo::cli {

inline constexpr int kExitSat = 0;
inline constexpr int kExitUnsat = 1;
inline constexpr int kExitTimeout = 2;
inline constexpr int kExitError = 3;
inline constexpr int kExitUsage = 64;

/// Runs one command line; `args` excludes the program name. Data and report
/// lines go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace perphylo::cli

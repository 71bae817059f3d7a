#pragma once

#include "hurst/estimators.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hurst {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitUsage = 64;

/// "uniform", "geometric:r" (alpha_k = r^k) or an explicit comma-separated list.
/// For the named generators m fixes the length; an explicit list must have m + 1
/// entries when m >= 0 is given.
[[nodiscard]] WeightProfile parse_alpha(const std::string& spec, int m);

/// "lo..hi:step", a comma-separated list, or a single value.
[[nodiscard]] std::vector<double> parse_h_range(const std::string& spec);

/// Runs one subcommand. args excludes the program name. Reports go to out, errors
/// and help for bad usage to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_command(int argc, const char* const* argv);

} // namespace hurst

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace roomgen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Tolerances used by loss-check.
inline constexpr double kBruteForceTolerance = 1e-9;
inline constexpr double kGradientTolerance = 1e-4;
inline constexpr double kFiniteDifferenceStep = 1e-4;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace roomgen::cli

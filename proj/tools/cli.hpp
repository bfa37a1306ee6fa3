#pragma once

#include <ostream>

namespace stereo::cli {

// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitNonUnique = 3;
inline constexpr int kExitNotApplicable = 4;

/// Runs the `stereo` command line; reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stereo::cli

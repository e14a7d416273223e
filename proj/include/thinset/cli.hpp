#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thinset::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;

/// Runs one invocation (args excludes the program name). Writes exactly one
/// JSON document to `out` (or to --out), diagnostics to `err`, and returns
/// the exit code, which always agrees with the document's "verdict" field.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace thinset::cli

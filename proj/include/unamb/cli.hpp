#pragma once

#include <string>
#include <vector>

namespace unamb::cli {

/// Exit codes: 0 success or PASS, 1 negative domain answer (non-member,
/// FAIL sweep, false), 2 usage or input format error, 3 internal inconsistency.
struct CommandOutcome {
    int exit_code = 0;
    std::string report;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// Runs one command line; args excludes the program name. Never throws.
CommandOutcome run(const std::vector<std::string>& args);

}  // namespace unamb::cli

#pragma once

#include <string>
#include <vector>

#include "hyperq/cli/config.hpp"

namespace hyperq {

// Exit-code contract:
//   0 success
//   1 invariant failure (verify) or unexpected runtime failure
//   2 configuration error (bad flags, bad config file, bad grids)
//   3 divergence where finite values were requested (moments)
enum ExitCode {
    exit_ok = 0,
    exit_invariant = 1,
    exit_config = 2,
    exit_divergence = 3,
};

int cmd_moments(const RunConfig& cfg);
int cmd_scan(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_report(const RunConfig& cfg);

// Full front-end: parses args (excluding argv[0]), resolves the config
// chain (defaults < file < flags; HYPERQ_OUT overrides the output
// directory), dispatches, maps error classes to exit codes.
int run_cli(const std::vector<std::string>& args);

}  // namespace hyperq

#pragma once

#include <string>

#include "config.hpp"

namespace fracsolve::cli {

// Exit codes of the batch driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitDivergence = 2;
inline constexpr int kExitHypothesis = 3;
inline constexpr int kExitVerifyFailed = 4;

/// Executes the configured job, writes the solution CSV and the report JSON,
/// and returns the exit code.  When dump_spec_path is nonempty the normalized
/// config is written there instead and nothing runs.
int run_command(const std::string& config_path, const std::string& dump_spec_path);

/// Prints the uniqueness threshold and a priori bound numbers for an rl or ts
/// config, plus the norm-weight scan for rl.
int threshold_command(const std::string& config_path);

/// Applies a single fractional operator to a tabulated CSV series.
int op_command(const std::string& apply, double alpha, const std::string& in_path,
               const std::string& out_path);

/// Maps an in-flight exception to the exit-code contract, printing the
/// diagnostic to stderr.
int exit_code_for_current_exception();

}  // namespace fracsolve::cli

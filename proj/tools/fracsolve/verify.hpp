#pragma once

#include <string>

namespace fracsolve::cli {

/// Runs the named oracle-comparison suite (operators, volterra, thermistor,
/// timescale or all) and prints a pass/fail table.  Returns 0 when every
/// comparison passes, 4 otherwise; throws validation_error for an unknown
/// suite name.
int verify_command(const std::string& suite);

}  // namespace fracsolve::cli

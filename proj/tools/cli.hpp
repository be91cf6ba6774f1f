// SPDX-License-Identifier: MIT
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace irrsum::cli {

/// Environment variable holding the default precision in bits.
inline constexpr const char* kPrecisionEnv = "IRRSUM_PREC";

/// Runs one command line (args[0] is the program name). Returns 0 on
/// success, 2 when a sum did not reach its tolerance and 1 on input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace irrsum::cli

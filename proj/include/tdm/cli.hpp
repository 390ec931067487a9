#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tdm::cli {

enum ExitStatus : int {
  exit_success = 0,
  exit_model_error = 1, // ERROR diagnostics, failed generation, fmt mismatch
  exit_usage = 2,
  exit_io = 3,
};

/// Runs `tdm <args...>` (args exclude the program name). Payloads go to
/// `out`, diagnostics and messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tdm::cli

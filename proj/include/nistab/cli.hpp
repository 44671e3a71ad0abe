#pragma once

#include <string>
#include <vector>

namespace nistab {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;   // bad arguments, InvalidEpsilon, InvalidRange
inline constexpr int kParse = 3;   // malformed plant file
inline constexpr int kIo = 4;      // unreadable input, unwritable output
}  // namespace exit_code

struct CliResult {
  int exit_code = exit_code::kOk;
  std::string out;
  std::string err;
};

/// Runs `ni-stab` with argv[1..]. Side files (--out, --gain-out) are written
/// directly; everything else is returned.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace nistab

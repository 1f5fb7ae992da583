#pragma once

// The nsdecomp command line, runnable in-process.

#include <iosfwd>
#include <string>
#include <vector>

#include "nsdecomp/error.hpp"

namespace nsdecomp {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitInputError = 2,
  kExitNotSymmetric = 3,
  kExitLimit = 4,
  kExitInternal = 5,
};

int exit_code_for(Errc code) noexcept;

struct CliResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// args excludes the program name. `in` backs file arguments given as "-".
CliResult run_cli(const std::vector<std::string>& args, std::istream& in);
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace nsdecomp

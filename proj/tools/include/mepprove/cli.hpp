#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mepprove::cli {

enum ExitCode : int {
  kProven = 0,
  kDisproven = 1,
  kUndecided = 2,
  kInputError = 3,
};

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mepprove::cli

#pragma once

#include <string>
#include <vector>

namespace blc::cli {

/// Exit codes.
enum : int {
  kOk = 0,
  kCheckFailed = 1,
  kPrecondition = 2,
  kBudget = 3,
  kUndecided = 4,
};

struct Output {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

/// Runs one command; args exclude the program name.
Output run(const std::vector<std::string>& args);

std::string version();

}  // namespace blc::cli

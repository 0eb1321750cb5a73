#pragma once

#include <stdexcept>
#include <string>

#include "run_config.hpp"

namespace qdiwb {

enum ExitCode : int { kPass = 0, kFailure = 1, kUsage = 2 };

/// Bad flags, missing files, unwritable outputs.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int cmd_gen(const RunConfig& cfg);
int cmd_sim(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_bench(const RunConfig& cfg);
int cmd_report(const RunConfig& cfg);

}  // namespace qdiwb

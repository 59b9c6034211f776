#pragma once
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "experiment_config.hpp"

namespace hyperorbit::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kVerificationFailure = 3, kOverflow = 4 };

struct RunResult {
  int code = kOk;
  std::string status = "ok";  // "ok", or the failing check
  std::vector<std::string> files;
};

/// Runs a materialized config, writing outputs into out_dir and a short
/// human-readable summary to log. Invalid input throws hyperorbit::Error.
RunResult run(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace hyperorbit::cli

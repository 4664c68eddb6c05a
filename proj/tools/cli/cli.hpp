#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace meanlab::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kConvergenceFailure = 3,
  kOperationalFailure = 4,
};

struct ExperimentConfig {
  std::string interval = "0,10";
  std::vector<std::string> generators;
  std::vector<std::string> generators2;
  std::string demo;
  /// Gauss iteration gap tolerance.
  double tolerance = 1e-10;
  int max_iterations = 5000;
  /// Pass threshold of verify checks; each check has its own default.
  std::optional<double> check_tolerance;
  int samples = 100;
  std::uint64_t seed = 0;
  Format format = Format::kText;
  std::string output;
  bool trace = false;
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out` (or --output), diagnostics and logging to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace meanlab::cli

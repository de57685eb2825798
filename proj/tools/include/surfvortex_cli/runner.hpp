#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "surfvortex_cli/config.hpp"

namespace surfvortex::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitToleranceFailure = 1,
  kExitConfigError = 2,
  kExitNumericalHalt = 3,
};

struct RunOptions {
  std::string out_dir = "surfvortex-out";
  std::optional<double> dt;
  std::optional<std::uint64_t> seed;
};

/// Shortest round-trip decimal form, independent of the locale.
std::string format_number(double v);

/// Runs one experiment kind on a parsed config and writes its outputs.
int run_experiment(const std::string& command, ExperimentConfig config, const RunOptions& options,
                   std::ostream& log);

/// Loads `config_path` and runs it; config errors map to exit code 2.
int run(const std::string& command, const std::string& config_path, const RunOptions& options,
        std::ostream& log);

/// Full command line entry point (argv[0] is the program name).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace surfvortex::cli

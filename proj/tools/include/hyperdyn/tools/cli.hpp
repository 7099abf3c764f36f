#pragma once

// The hyperdyn command line: subcommand dispatch and the batch runner.

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hyperdyn::tools {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitDomain = 3 };

/// args excludes the program name. Normal output goes to `out`, diagnostics
/// to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// A batch experiment: `command = <group> <op>`, optional `output` and
/// `format`, and every other key passed to the command as an option.
struct ExperimentConfig {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string output_path;
  std::string format;

  static ExperimentConfig parse(std::string_view text);
  /// Equivalent argument list for run_cli.
  std::vector<std::string> to_args() const;
};

}  // namespace hyperdyn::tools

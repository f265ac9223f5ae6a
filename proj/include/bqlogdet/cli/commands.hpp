#pragma once

#include "bqlogdet/cli/config.hpp"

#include <iosfwd>

namespace bqlogdet::cli {

enum ExitCode : int { exit_success = 0, exit_input_error = 1, exit_numerical_error = 2 };

/// Parses argv and runs the chosen subcommand. Results go to the configured
/// output (stdout for "-"); a single-line "error: input: ..." or
/// "error: numerical: ..." message goes to err on failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs an already-parsed config. Throws InputError / NumericalError.
void execute(const RunConfig& config, std::ostream& out);

/// Matrices named by the config, in order: files, synthetic specs, bundled, decay profiles.
std::vector<BenchmarkMatrix> collect_matrices(const RunConfig& config);

/// Data directory used by --bundled when the config leaves it empty.
std::string default_data_dir();

}  // namespace bqlogdet::cli

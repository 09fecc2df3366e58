#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pendsim::cli {

// Exit-code contract shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRunAborted = 3;
inline constexpr int kExitAnalysisError = 4;

/// Runs the scenario in `config_path`, writes the CSV log to `out_path`,
/// prints a summary (final ||q||_inf, max |u| per channel) and warns when a
/// standard-mode run settles into a limit cycle.
int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 std::ostream& out, std::ostream& err);

/// Batch variant: each config is simulated (optionally on `jobs` threads)
/// and written to <out_dir>/<config-stem>.csv.
int cmd_simulate_batch(const std::vector<std::string>& config_paths,
                       const std::string& out_dir, int jobs, std::ostream& out,
                       std::ostream& err);

/// Linearizes the configured closed loop at the equilibrium and prints a
/// table of eigenvalues with their classification.
int cmd_eigen(const std::string& config_path, std::ostream& out,
              std::ostream& err);

/// Prints response time and peak response for the requested joints and SNR
/// for the requested wrench channels of a logged run. `format` is "table"
/// or "csv".
int cmd_kpi(const std::string& log_path, const std::vector<std::string>& joints,
            const std::vector<std::string>& channels, const std::string& format,
            std::ostream& out, std::ostream& err);

}  // namespace pendsim::cli

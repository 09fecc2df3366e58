#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pendsim/cli.hpp"

namespace {

// Expands "q1..q5" ranges and comma lists into joint names.
std::vector<std::string> parse_name_list(const std::string& arg) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (begin <= arg.size()) {
    const std::size_t end = arg.find(',', begin);
    const std::string token =
        arg.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
    const std::size_t dots = token.find("..");
    if (dots != std::string::npos && token.size() >= 6 && token[0] == 'q' &&
        token[dots + 2] == 'q') {
      const int lo = token[dots - 1] - '0';
      const int hi = token[dots + 3] - '0';
      for (int i = lo; i <= hi; ++i) out.push_back("q" + std::to_string(i));
    } else if (!token.empty()) {
      out.push_back(token);
    }
    if (end == std::string::npos) break;
    begin = end + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Suspended-platform/load simulation, stability and KPI tool"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write a CSV log");
  std::vector<std::string> config_paths;
  std::string out_path;
  std::string out_dir;
  int jobs = 1;
  simulate->add_option("--config", config_paths, "Scenario config file (repeatable)")
      ->required();
  simulate->add_option("--out", out_path, "Output CSV path (single scenario)");
  simulate->add_option("--out-dir", out_dir,
                       "Output directory (batch mode, one CSV per config)");
  simulate->add_option("--jobs", jobs, "Concurrent scenarios in batch mode")
      ->check(CLI::PositiveNumber);

  // eigen
  auto* eigen = app.add_subcommand("eigen", "Closed-loop eigenvalues at the equilibrium");
  std::string eigen_config;
  eigen->add_option("--config", eigen_config, "Scenario config file")->required();

  // kpi
  auto* kpi = app.add_subcommand("kpi", "KPIs (response time, peak response, SNR) of a log");
  std::string log_path;
  std::string joints_arg = "q1..q5";
  std::string channels_arg = "Fx,Fy,tau_z";
  std::string format = "table";
  kpi->add_option("--log", log_path, "CSV log written by 'simulate'")->required();
  kpi->add_option("--joints", joints_arg, "Joints, e.g. q1..q5 or q4,q5");
  kpi->add_option("--channels", channels_arg, "Wrench channels, e.g. Fx,Fy,tau_z");
  kpi->add_option("--format", format, "Output format: table or csv")
      ->check(CLI::IsMember({"table", "csv"}));

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    if (config_paths.size() == 1 && !out_path.empty()) {
      return pendsim::cli::cmd_simulate(config_paths[0], out_path, std::cout,
                                        std::cerr);
    }
    if (!out_dir.empty()) {
      return pendsim::cli::cmd_simulate_batch(config_paths, out_dir, jobs,
                                              std::cout, std::cerr);
    }
    std::cerr << "error: pass --out <csv> for a single scenario or --out-dir "
                 "<dir> for a batch\n";
    return pendsim::cli::kExitConfigError;
  }
  if (eigen->parsed()) {
    return pendsim::cli::cmd_eigen(eigen_config, std::cout, std::cerr);
  }
  return pendsim::cli::cmd_kpi(log_path, parse_name_list(joints_arg),
                               parse_name_list(channels_arg), format, std::cout,
                               std::cerr);
}

#include "pendsim/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "pendsim/analysis.hpp"
#include "pendsim/config.hpp"
#include "pendsim/csv.hpp"
#include "pendsim/errors.hpp"
#include "pendsim/sim.hpp"

namespace pendsim::cli {

namespace {

const char* class_name(analysis::EigenClass c) {
  switch (c) {
    case analysis::EigenClass::StrictlyStable: return "strictly-stable";
    case analysis::EigenClass::MarginalImaginary: return "marginal-imaginary";
    case analysis::EigenClass::Unstable: return "unstable";
  }
  return "?";
}

void print_summary(std::ostream& out, const sim::SimLog& log) {
  const auto last = static_cast<Eigen::Index>(log.size()) - 1;
  const double final_q = log.q.col(last).cwiseAbs().maxCoeff();
  out << "final ||q||_inf = " << final_q << " rad\n";
  const bool full = log.kind == sim::ModelKind::Full;
  const char* names[3] = {"Fx", "Fy", "tau_z"};
  for (Eigen::Index r = 0; r < log.u.rows(); ++r) {
    const double peak = log.u.row(r).cwiseAbs().maxCoeff();
    out << "max |" << (full ? names[r] : "u") << "| = " << peak << '\n';
  }
}

void warn_limit_cycles(std::ostream& out, const sim::SimLog& log,
                       double duration) {
  const double settle = duration / 2.0;
  for (Eigen::Index r = 0; r < log.q.rows(); ++r) {
    std::vector<double> series(log.size());
    for (std::size_t i = 0; i < log.size(); ++i) {
      series[i] = log.q(r, static_cast<Eigen::Index>(i));
    }
    const auto res = analysis::detect_limit_cycle(series, log.dt, settle, 3);
    if (res.kind == analysis::LimitCycleResult::Kind::LimitCycle) {
      out << "warning: limit cycle detected on q" << (r + 1)
          << " (amplitude " << res.amplitude << " rad, period " << res.period
          << " s)\n";
    }
  }
}

int simulate_to_string(const std::string& config_path, const std::string& out_path,
                       std::ostream& out, std::ostream& err) {
  sim::ScenarioConfig config;
  try {
    config = io::parse_scenario_file(config_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  sim::SimLog log;
  try {
    log = sim::run(config);
  } catch (const RunAborted& e) {
    err << "error: " << e.what() << '\n';
    err << "  q  = " << e.q().transpose() << '\n';
    err << "  dq = " << e.dq().transpose() << '\n';
    return kExitRunAborted;
  }

  try {
    io::write_csv_file(out_path, log);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  out << "wrote " << log.size() << " samples to " << out_path << '\n';
  print_summary(out, log);
  if (config.controller.mode == control::Mode::Standard) {
    warn_limit_cycles(out, log, config.duration);
  }
  return kExitOk;
}

}  // namespace

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
  return simulate_to_string(config_path, out_path, out, err);
}

int cmd_simulate_batch(const std::vector<std::string>& config_paths,
                       const std::string& out_dir, int jobs, std::ostream& out,
                       std::ostream& err) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);

  struct Task {
    std::string config, csv;
    std::ostringstream out, err;
    int code = 0;
  };
  std::vector<Task> tasks(config_paths.size());
  for (std::size_t i = 0; i < config_paths.size(); ++i) {
    tasks[i].config = config_paths[i];
    tasks[i].csv =
        (fs::path(out_dir) / (fs::path(config_paths[i]).stem().string() + ".csv"))
            .string();
  }

  const int workers = std::max(1, jobs);
  std::atomic<std::size_t> next{0};
  const auto worker = [&tasks, &next]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      tasks[i].code =
          simulate_to_string(tasks[i].config, tasks[i].csv, tasks[i].out,
                             tasks[i].err);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  int code = kExitOk;
  for (auto& task : tasks) {
    out << "== " << task.config << '\n' << task.out.str();
    err << task.err.str();
    if (task.code != kExitOk && code == kExitOk) code = task.code;
  }
  return code;
}

int cmd_eigen(const std::string& config_path, std::ostream& out,
              std::ostream& err) {
  sim::ScenarioConfig config;
  try {
    config = io::parse_scenario_file(config_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  analysis::LinearizationResult result;
  try {
    if (config.kind == sim::ModelKind::Full) {
      result = analysis::linearize(config.controller, JointState{});
    } else {
      result = analysis::linearize_planar(sim::planar_controller(config),
                                          PlanarState{});
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitAnalysisError;
  }

  out << std::setw(16) << "Re" << std::setw(16) << "Im" << "  classification\n";
  for (Eigen::Index i = 0; i < result.eigenvalues.size(); ++i) {
    out << std::setw(16) << std::setprecision(8) << result.eigenvalues(i).real()
        << std::setw(16) << result.eigenvalues(i).imag() << "  "
        << class_name(result.classification[static_cast<std::size_t>(i)])
        << '\n';
  }
  return kExitOk;
}

int cmd_kpi(const std::string& log_path, const std::vector<std::string>& joints,
            const std::vector<std::string>& channels, const std::string& format,
            std::ostream& out, std::ostream& err) {
  sim::SimLog log;
  try {
    log = io::read_csv_file(log_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  analysis::KpiReport report;
  try {
    report = analysis::kpi_report(log, joints, channels);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitAnalysisError;
  }

  const bool csv = format == "csv";
  if (csv) {
    out << "metric,name,value\n";
    for (std::size_t i = 0; i < report.joints.size(); ++i) {
      out << "response_time," << report.joints[i] << ',';
      if (report.response_times[i]) {
        out << *report.response_times[i];
      } else {
        out << "nan";
      }
      out << '\n';
      out << "peak_response," << report.joints[i] << ','
          << report.peak_responses[i] << '\n';
    }
    for (std::size_t i = 0; i < report.channels.size(); ++i) {
      out << "snr," << report.channels[i] << ',';
      if (std::isinf(report.snr_db[i])) {
        out << "inf";
      } else {
        out << report.snr_db[i];
      }
      out << '\n';
    }
  } else {
    for (std::size_t i = 0; i < report.joints.size(); ++i) {
      out << report.joints[i] << ": response time = ";
      if (report.response_times[i]) {
        out << *report.response_times[i] << " s";
      } else {
        out << "undefined (non-settling)";
      }
      out << ", peak response = " << report.peak_responses[i] << " rad\n";
    }
    for (std::size_t i = 0; i < report.channels.size(); ++i) {
      out << report.channels[i] << ": SNR = ";
      if (std::isinf(report.snr_db[i])) {
        out << "noise-free (+inf)";
      } else {
        out << report.snr_db[i] << " dB";
      }
      out << '\n';
    }
  }
  return kExitOk;
}

}  // namespace pendsim::cli

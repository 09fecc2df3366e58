#include "pendsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "pendsim/errors.hpp"

namespace pendsim::analysis {

namespace {

LinearizationResult linearize_generic(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& field,
    const Eigen::VectorXd& x_eq) {
  const Eigen::VectorXd f0 = field(x_eq);
  const double residual = f0.norm();
  if (residual > kEquilibriumTol) {
    throw NotAnEquilibrium(residual);
  }

  const auto n = x_eq.size();
  Eigen::MatrixXd A(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd xp = x_eq;
    Eigen::VectorXd xm = x_eq;
    xp(j) += kLinearizeStep;
    xm(j) -= kLinearizeStep;
    A.col(j) = (field(xp) - field(xm)) / (2.0 * kLinearizeStep);
  }

  Eigen::EigenSolver<Eigen::MatrixXd> es(A);
  LinearizationResult result;
  result.A = A;
  result.eigenvalues = es.eigenvalues();
  result.epsilon_re = kEigenMargin;

  // Stable report order: descending real part, then descending imaginary.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const auto ea = result.eigenvalues(a);
    const auto eb = result.eigenvalues(b);
    if (ea.real() != eb.real()) return ea.real() > eb.real();
    return ea.imag() > eb.imag();
  });
  Eigen::VectorXcd sorted(n);
  for (Eigen::Index i = 0; i < n; ++i) sorted(i) = result.eigenvalues(order[i]);
  result.eigenvalues = sorted;

  const double scale = result.eigenvalues.cwiseAbs().maxCoeff();
  result.classification.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = result.eigenvalues(i).real();
    const double ratio = scale > 0.0 ? re / scale : 0.0;
    if (ratio > kEigenMargin) {
      result.classification.push_back(EigenClass::Unstable);
    } else if (ratio >= -kEigenMargin) {
      result.classification.push_back(EigenClass::MarginalImaginary);
    } else {
      result.classification.push_back(EigenClass::StrictlyStable);
    }
  }
  return result;
}

}  // namespace

LinearizationResult linearize(const control::ControllerConfig& cfg,
                              const JointState& x_eq) {
  control::validate(cfg);
  const auto field = [&cfg](const Eigen::VectorXd& x) {
    JointState s{Vector5d(x.head<5>()), Vector5d(x.tail<5>())};
    const auto [u, breakdown] = control::control_wrench(cfg, s);
    const Vector5d qdd =
        dynamics::forward_dynamics(cfg.nominal, s, u, Vector5d::Zero());
    Eigen::VectorXd f(10);
    f << s.dq, qdd;
    return f;
  };
  Eigen::VectorXd x(10);
  x << x_eq.q, x_eq.dq;
  return linearize_generic(field, x);
}

LinearizationResult linearize_planar(const control::PlanarControllerConfig& cfg,
                                     const PlanarState& x_eq) {
  control::validate(cfg);
  const auto field = [&cfg](const Eigen::VectorXd& x) {
    PlanarState s{Vector2d(x.head<2>()), Vector2d(x.tail<2>())};
    const auto [u, breakdown] = control::planar_control_wrench(cfg, s);
    const Vector2d qdd = dynamics::planar_forward_dynamics(cfg.nominal, s, u);
    Eigen::VectorXd f(4);
    f << s.dq, qdd;
    return f;
  };
  Eigen::VectorXd x(4);
  x << x_eq.q, x_eq.dq;
  return linearize_generic(field, x);
}

LimitCycleResult detect_limit_cycle(const std::vector<double>& signal,
                                    double dt, double settle_window,
                                    int min_cycles) {
  LimitCycleResult result;
  const std::size_t n = signal.size();
  const std::size_t start =
      std::min(n, static_cast<std::size_t>(std::ceil(settle_window / dt)));
  if (n - start < 3) return result;  // Inconclusive

  double max_abs = 0.0;
  for (std::size_t i = start; i < n; ++i) {
    max_abs = std::max(max_abs, std::abs(signal[i]));
  }
  if (max_abs < kConvergeTol) {
    result.kind = LimitCycleResult::Kind::Converged;
    return result;
  }

  // Alternating local extrema with a small prominence filter.
  struct Extremum {
    double t, value;
    bool is_max;
  };
  std::vector<Extremum> extrema;
  const double prominence = kConvergeTol / 2.0;
  for (std::size_t i = start + 1; i + 1 < n; ++i) {
    const bool is_max = signal[i] >= signal[i - 1] && signal[i] > signal[i + 1];
    const bool is_min = signal[i] <= signal[i - 1] && signal[i] < signal[i + 1];
    if (!is_max && !is_min) continue;
    if (!extrema.empty()) {
      if (extrema.back().is_max == is_max) continue;  // keep alternation
      if (std::abs(signal[i] - extrema.back().value) < prominence) continue;
    }
    extrema.push_back({static_cast<double>(i) * dt, signal[i], is_max});
  }

  // min_cycles complete cycles need min_cycles + 1 same-sense extrema.
  std::vector<double> max_times;
  for (const auto& e : extrema) {
    if (e.is_max) max_times.push_back(e.t);
  }
  if (static_cast<int>(max_times.size()) < min_cycles + 1 || extrema.size() < 3) {
    return result;
  }

  std::vector<double> peak_to_peak;
  for (std::size_t i = 0; i + 1 < extrema.size(); ++i) {
    peak_to_peak.push_back(std::abs(extrema[i].value - extrema[i + 1].value));
  }
  const double mean_pp =
      std::accumulate(peak_to_peak.begin(), peak_to_peak.end(), 0.0) /
      static_cast<double>(peak_to_peak.size());
  // Compare same-sense lobes one full cycle apart (index i vs i + 2);
  // adjacent entries are only half a cycle apart.
  bool steady = true;
  for (std::size_t i = 0; i + 2 < peak_to_peak.size(); ++i) {
    const double hi = std::max(peak_to_peak[i], peak_to_peak[i + 2]);
    if (std::abs(peak_to_peak[i + 2] - peak_to_peak[i]) > 0.10 * hi) {
      steady = false;
      break;
    }
  }

  result.amplitude = mean_pp / 2.0;
  double period = 0.0;
  for (std::size_t i = 0; i + 1 < max_times.size(); ++i) {
    period += max_times[i + 1] - max_times[i];
  }
  result.period = period / static_cast<double>(max_times.size() - 1);

  if (result.amplitude > kConvergeTol && steady) {
    result.kind = LimitCycleResult::Kind::LimitCycle;
  }
  return result;
}

std::optional<double> response_time(const std::vector<double>& signal,
                                    double dt, double reference,
                                    double band_fraction) {
  if (signal.size() < 2) return std::nullopt;
  double max_dev = 0.0;
  for (double s : signal) max_dev = std::max(max_dev, std::abs(s - reference));
  if (max_dev == 0.0) return 0.0;

  const double band = band_fraction * max_dev;
  std::size_t last_violation = signal.size();  // sentinel: none
  for (std::size_t i = signal.size(); i-- > 0;) {
    if (std::abs(signal[i] - reference) > band) {
      last_violation = i;
      break;
    }
  }
  if (last_violation == signal.size()) return 0.0;
  if (last_violation + 1 >= signal.size()) return std::nullopt;  // never settles
  return static_cast<double>(last_violation + 1) * dt;
}

double peak_response(const std::vector<double>& signal, double reference) {
  if (signal.empty()) return 0.0;
  std::vector<double> e(signal.size());
  double max_abs = 0.0;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    e[i] = signal[i] - reference;
    max_abs = std::max(max_abs, std::abs(e[i]));
  }
  if (max_abs == 0.0) return 0.0;

  const bool starts_at_ref = std::abs(e[0]) < 1e-6 * max_abs;
  if (starts_at_ref) {
    // First excursion: signed value of the global extremum.
    std::size_t g = 0;
    for (std::size_t i = 1; i < e.size(); ++i) {
      if (std::abs(e[i]) > std::abs(e[g])) g = i;
    }
    return e[g];
  }

  // Released away from the reference: the peak is the extremum of the first
  // lobe past the reference crossing; with no crossing, the initial
  // deviation itself.
  const double s0 = e[0] > 0.0 ? 1.0 : -1.0;
  std::size_t cross = e.size();
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i] * s0 < 0.0) {
      cross = i;
      break;
    }
  }
  if (cross == e.size()) {
    std::size_t g = 0;
    for (std::size_t i = 1; i < e.size(); ++i) {
      if (std::abs(e[i]) > std::abs(e[g])) g = i;
    }
    return e[g];
  }
  double peak = 0.0;
  for (std::size_t i = cross; i < e.size() && e[i] * s0 <= 0.0; ++i) {
    if (std::abs(e[i]) > std::abs(peak)) peak = e[i];
  }
  return peak;
}

double snr(const std::vector<double>& signal, double dt,
           double smoothing_window) {
  const std::size_t n = signal.size();
  if (n == 0) return std::numeric_limits<double>::infinity();
  const std::size_t half = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(smoothing_window / dt / 2.0)));

  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + signal[i];

  double signal_power = 0.0;
  double noise_power = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n - 1, i + half);
    const double mean = (prefix[hi + 1] - prefix[lo]) /
                        static_cast<double>(hi - lo + 1);
    signal_power += mean * mean;
    const double res = signal[i] - mean;
    noise_power += res * res;
  }
  if (noise_power == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal_power / noise_power);
}

namespace {

int joint_row(const sim::SimLog& log, const std::string& name) {
  const int nq = static_cast<int>(log.q.rows());
  if (name.size() == 2 && name[0] == 'q') {
    const int idx = name[1] - '1';
    if (idx >= 0 && idx < nq) return idx;
  }
  throw ValidationError("unknown joint name: " + name);
}

int channel_row(const sim::SimLog& log, const std::string& name) {
  if (log.kind == sim::ModelKind::Full) {
    if (name == "Fx") return 0;
    if (name == "Fy") return 1;
    if (name == "tau_z") return 2;
  } else if (name == "u" || name == "Fx") {
    return 0;
  }
  throw ValidationError("unknown wrench channel: " + name);
}

std::vector<double> row_of(const Eigen::MatrixXd& m, int row) {
  std::vector<double> v(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.cols(); ++i) v[static_cast<std::size_t>(i)] = m(row, i);
  return v;
}

}  // namespace

KpiReport kpi_report(const sim::SimLog& log, const std::vector<std::string>& joints,
                     const std::vector<std::string>& channels) {
  KpiReport report;
  report.joints = joints;
  report.channels = channels;
  for (const auto& joint : joints) {
    const auto series = row_of(log.q, joint_row(log, joint));
    report.response_times.push_back(response_time(series, log.dt, 0.0));
    report.peak_responses.push_back(peak_response(series, 0.0));
  }
  for (const auto& channel : channels) {
    const auto series = row_of(log.u, channel_row(log, channel));
    report.snr_db.push_back(snr(series, log.dt));
  }
  return report;
}

}  // namespace pendsim::analysis

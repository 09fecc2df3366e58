#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "pendsim/control.hpp"
#include "pendsim/sim.hpp"
#include "pendsim/types.hpp"

namespace pendsim::analysis {

enum class EigenClass { StrictlyStable, MarginalImaginary, Unstable };

/// Closed-loop state matrix at an equilibrium plus its spectrum. A is
/// 10x10 for the full model, 4x4 planar. Each eigenvalue is classified by
/// the sign of Re(lambda)/max|lambda| against the margin epsilon_re.
struct LinearizationResult {
  Eigen::MatrixXd A;
  Eigen::VectorXcd eigenvalues;
  std::vector<EigenClass> classification;
  double epsilon_re = 1e-3;
};

/// Relative real-part margin separating marginal from strictly stable.
inline constexpr double kEigenMargin = 1e-3;
/// Equilibrium residual allowed before differencing.
inline constexpr double kEquilibriumTol = 1e-8;
/// Central-difference step for the closed-loop Jacobian.
inline constexpr double kLinearizeStep = 1e-6;

/// Linearizes the closed loop (controller on its own nominal model, plant =
/// nominal) about x_eq = (q_eq, qd_eq). Throws NotAnEquilibrium if the
/// closed-loop vector field does not vanish there.
LinearizationResult linearize(const control::ControllerConfig& cfg,
                              const JointState& x_eq);
LinearizationResult linearize_planar(const control::PlanarControllerConfig& cfg,
                                     const PlanarState& x_eq);

struct LimitCycleResult {
  enum class Kind { LimitCycle, Converged, Inconclusive };
  Kind kind = Kind::Inconclusive;
  double amplitude = 0.0;  // mean peak-to-peak / 2 over the trailing window
  double period = 0.0;     // mean spacing of same-sense extrema
};

/// Amplitude below which a trailing-window signal counts as converged.
inline constexpr double kConvergeTol = 1e-3;

/// Classifies the tail of a signal (t >= settle_window) as a sustained
/// oscillation, a converged signal, or inconclusive. A limit cycle needs at
/// least min_cycles complete cycles whose peak-to-peak amplitudes vary by
/// less than 10% between consecutive cycles.
LimitCycleResult detect_limit_cycle(const std::vector<double>& signal,
                                    double dt, double settle_window,
                                    int min_cycles);

/// First time after which |signal - reference| stays within
/// band_fraction * max|signal - reference| for the rest of the log; the
/// band is referenced to the initial transient magnitude. Empty optional if
/// the signal never settles.
std::optional<double> response_time(const std::vector<double>& signal,
                                    double dt, double reference,
                                    double band_fraction = 0.01);

/// Signed overshoot in the first transient: for a signal released away from
/// the reference, the extremum of the first lobe beyond the reference
/// crossing (the initial deviation if it never crosses); for a signal
/// starting at the reference, the extremum of its first excursion.
double peak_response(const std::vector<double>& signal, double reference);

/// Smoothed-signal to residual power ratio in dB: s = moving average over
/// smoothing_window, n = signal - s, SNR = 10 log10(sum s^2 / sum n^2).
/// +infinity when the residual power is exactly zero (noise-free).
double snr(const std::vector<double>& signal, double dt,
           double smoothing_window = 0.1);

struct KpiReport {
  std::vector<std::string> joints;
  std::vector<std::optional<double>> response_times;  // [s]
  std::vector<double> peak_responses;                 // [rad]
  std::vector<std::string> channels;
  std::vector<double> snr_db;
};

/// KPIs over a simulation log for the requested joint/channel names
/// (joints "q1".."q5" or planar "q1","q2"; channels "Fx","Fy","tau_z").
KpiReport kpi_report(const sim::SimLog& log, const std::vector<std::string>& joints,
                     const std::vector<std::string>& channels);

}  // namespace pendsim::analysis

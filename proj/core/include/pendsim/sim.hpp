#pragma once

#include <optional>
#include <vector>

#include "pendsim/control.hpp"
#include "pendsim/dynamics.hpp"
#include "pendsim/model.hpp"
#include "pendsim/planar.hpp"
#include "pendsim/rng.hpp"
#include "pendsim/types.hpp"

namespace pendsim::sim {

/// A constant world-frame horizontal force applied to both the platform and
/// the load points while t_on <= t < t_off, mapped to generalized forces
/// through the point Jacobians.
struct DisturbanceProfile {
  double t_on = 10.0;
  double t_off = 20.0;
  Vector2d force = Vector2d(8.1, 8.1);  // [N] along world x, y
};

/// Acceleration-measurement noise. The per-sample standard deviation is
/// max(accel_std, relative_strength * |qdd_true|) per component. With
/// velocity_estimation on, the controller's velocity measurement is a leaky
/// integral of the noisy acceleration instead of the true velocity;
/// otherwise one integration step of noise is added to the true velocity.
struct NoiseConfig {
  double accel_std = 1.0;
  double relative_strength = 0.10;
  bool velocity_estimation = true;
  double alpha = 0.999;  // per-step leakage of the velocity estimator
};

enum class ModelKind { Full, Planar };

struct ScenarioConfig {
  model::ModelParams plant;
  control::ControllerConfig controller;
  ModelKind kind = ModelKind::Full;
  Eigen::VectorXd q0 = (Eigen::VectorXd(5) << 0.1, 0.2, 0.4, -0.1, -0.2).finished();
  Eigen::VectorXd dq0 = Eigen::VectorXd::Zero(5);
  double duration = 30.0;
  double dt = 1e-3;
  std::optional<DisturbanceProfile> wind;
  std::optional<NoiseConfig> noise;
  std::uint64_t seed = 0;
};

/// Throws ValidationError / NonPositiveParameter on bad settings.
void validate(const ScenarioConfig& config);

/// Fixed-step closed-loop log, one row per control step (duration/dt + 1).
struct SimLog {
  ModelKind kind = ModelKind::Full;
  double dt = 1e-3;
  std::vector<double> t;
  Eigen::MatrixXd q;        // nq x N
  Eigen::MatrixXd dq;       // nq x N
  Eigen::MatrixXd u;        // nu x N (wrench, or scalar torque when planar)
  Eigen::MatrixXd q_meas;   // nq x N when noise is active, else empty
  Eigen::MatrixXd dq_meas;  // nq x N when noise is active, else empty
  Eigen::MatrixXd wind;     // 2 x N when wind is active, else empty
  std::size_t size() const { return t.size(); }
};

/// One classical RK4 step with u and f_ext held constant (zero-order hold).
JointState step(const model::ModelParams& plant, const JointState& state,
                const Wrench& u, const Vector5d& f_ext, double dt);
PlanarState step_planar(const model::PlanarParams& plant,
                        const PlanarState& state, double u,
                        const Vector2d& f_ext, double dt);

/// Generalized wind force J_p^T F + J_l^T F; zero outside [t_on, t_off).
Vector5d wind_generalized_force(const model::ModelParams& plant,
                                const Vector5d& q,
                                const DisturbanceProfile& profile, double t);

/// Measurement model; owns the RNG stream and the velocity-estimator state.
class Measurement {
 public:
  Measurement(std::optional<NoiseConfig> cfg, std::uint64_t seed)
      : cfg_(std::move(cfg)), rng_(seed) {}

  /// Measured (q, qd) given the true state and the acceleration over the
  /// preceding step. Noiseless configurations pass the state through.
  std::pair<Eigen::VectorXd, Eigen::VectorXd> measure(
      const Eigen::VectorXd& q, const Eigen::VectorXd& dq,
      const Eigen::VectorXd& ddq_prev, double dt);

 private:
  std::optional<NoiseConfig> cfg_;
  Rng rng_;
  Eigen::VectorXd v_est_;
  bool initialized_ = false;
};

/// Runs the scenario: measure -> control (on the nominal model) -> wind ->
/// RK4 step (on the plant), logging every step. Controller or dynamics
/// errors abort the run via RunAborted with the failing time and state.
SimLog run(const ScenarioConfig& config);

/// Planar controller derived from the scenario's full-model gain channels.
control::PlanarControllerConfig planar_controller(const ScenarioConfig& config);

}  // namespace pendsim::sim

#include "pendsim/sim.hpp"

#include <cmath>

#include "pendsim/errors.hpp"

namespace pendsim::sim {

void validate(const ScenarioConfig& config) {
  model::validate(config.plant);
  control::validate(config.controller);
  if (!(config.dt > 0.0)) throw ValidationError("dt must be > 0");
  if (!(config.duration >= config.dt)) {
    throw ValidationError("duration must be >= dt");
  }
  const int nq = config.kind == ModelKind::Full ? 5 : 2;
  if (config.q0.size() != nq || config.dq0.size() != nq) {
    throw ValidationError("q0/dq0 dimension does not match the model");
  }
  if (config.kind == ModelKind::Full) {
    if (!model::in_workspace(Vector5d(config.q0))) {
      throw ValidationError("q0 outside the validated workspace");
    }
  } else if (!model::in_workspace_planar(Vector2d(config.q0))) {
    throw ValidationError("q0 outside the validated workspace");
  }
  if (config.wind) {
    if (!(config.wind->t_on >= 0.0) || !(config.wind->t_on < config.wind->t_off) ||
        !(config.wind->t_off <= config.duration)) {
      throw ValidationError("wind window must satisfy 0 <= t_on < t_off <= duration");
    }
  }
  if (config.noise) {
    const auto& n = *config.noise;
    if (n.accel_std < 0.0 || n.relative_strength < 0.0 ||
        n.relative_strength > 1.0 || !(n.alpha > 0.0) || n.alpha > 1.0) {
      throw ValidationError("invalid noise configuration");
    }
  }
}

JointState step(const model::ModelParams& plant, const JointState& state,
                const Wrench& u, const Vector5d& f_ext, double dt) {
  const auto accel = [&](const JointState& s) {
    return dynamics::forward_dynamics(plant, s, u, f_ext);
  };
  const Vector5d k1q = state.dq;
  const Vector5d k1v = accel(state);
  JointState s2{state.q + 0.5 * dt * k1q, state.dq + 0.5 * dt * k1v};
  const Vector5d k2q = s2.dq;
  const Vector5d k2v = accel(s2);
  JointState s3{state.q + 0.5 * dt * k2q, state.dq + 0.5 * dt * k2v};
  const Vector5d k3q = s3.dq;
  const Vector5d k3v = accel(s3);
  JointState s4{state.q + dt * k3q, state.dq + dt * k3v};
  const Vector5d k4q = s4.dq;
  const Vector5d k4v = accel(s4);

  JointState out;
  out.q = state.q + dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
  out.dq = state.dq + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  return out;
}

PlanarState step_planar(const model::PlanarParams& plant,
                        const PlanarState& state, double u,
                        const Vector2d& f_ext, double dt) {
  const auto accel = [&](const PlanarState& s) {
    return dynamics::planar_forward_dynamics(plant, s, u, f_ext);
  };
  const Vector2d k1q = state.dq;
  const Vector2d k1v = accel(state);
  PlanarState s2{state.q + 0.5 * dt * k1q, state.dq + 0.5 * dt * k1v};
  const Vector2d k2q = s2.dq;
  const Vector2d k2v = accel(s2);
  PlanarState s3{state.q + 0.5 * dt * k2q, state.dq + 0.5 * dt * k2v};
  const Vector2d k3q = s3.dq;
  const Vector2d k3v = accel(s3);
  PlanarState s4{state.q + dt * k3q, state.dq + dt * k3v};
  const Vector2d k4q = s4.dq;
  const Vector2d k4v = accel(s4);

  PlanarState out;
  out.q = state.q + dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
  out.dq = state.dq + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  return out;
}

Vector5d wind_generalized_force(const model::ModelParams& plant,
                                const Vector5d& q,
                                const DisturbanceProfile& profile, double t) {
  if (t < profile.t_on || t >= profile.t_off) return Vector5d::Zero();
  const auto Jp = dynamics::platform_xy_jacobian(plant, q);
  const auto Jl = dynamics::load_xy_jacobian(plant, q);
  return Jp.transpose() * profile.force + Jl.transpose() * profile.force;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> Measurement::measure(
    const Eigen::VectorXd& q, const Eigen::VectorXd& dq,
    const Eigen::VectorXd& ddq_prev, double dt) {
  if (!cfg_ || (cfg_->accel_std == 0.0 && cfg_->relative_strength == 0.0)) {
    return {q, dq};
  }
  const NoiseConfig& n = *cfg_;

  Eigen::VectorXd noisy_ddq = ddq_prev;
  for (Eigen::Index i = 0; i < noisy_ddq.size(); ++i) {
    const double std = std::max(n.accel_std,
                                n.relative_strength * std::abs(ddq_prev(i)));
    noisy_ddq(i) += std * rng_.gaussian();
  }

  if (!n.velocity_estimation) {
    // Alternative mode: one integration step of the acceleration noise is
    // added directly to the true velocity.
    return {q, dq + (noisy_ddq - ddq_prev) * dt};
  }

  if (!initialized_) {
    v_est_ = dq;
    initialized_ = true;
  }
  v_est_ = n.alpha * v_est_ + dt * noisy_ddq;
  return {q, v_est_};
}

control::PlanarControllerConfig planar_controller(const ScenarioConfig& config) {
  control::PlanarControllerConfig cfg;
  cfg.mode = config.controller.mode;
  cfg.k_py = config.controller.K_py(0, 0);
  cfg.k_dy = config.controller.K_dy(0, 0);
  cfg.k_pc = config.controller.K_pc(0, 0);
  cfg.k_dc = config.controller.K_dc(0, 0);
  cfg.y_ref = config.controller.y_ref(0);
  cfg.dy_ref = config.controller.dy_ref(0);
  cfg.qc_ref = config.controller.qc_ref(0);
  cfg.dqc_ref = config.controller.dqc_ref(0);
  cfg.nominal = model::planar_reduction(config.controller.nominal);
  return cfg;
}

namespace {

SimLog run_full(const ScenarioConfig& config) {
  const std::size_t steps =
      static_cast<std::size_t>(std::llround(config.duration / config.dt));
  SimLog log;
  log.kind = ModelKind::Full;
  log.dt = config.dt;
  log.t.reserve(steps + 1);
  log.q.resize(5, steps + 1);
  log.dq.resize(5, steps + 1);
  log.u.resize(3, steps + 1);
  if (config.noise) {
    log.q_meas.resize(5, steps + 1);
    log.dq_meas.resize(5, steps + 1);
  }
  if (config.wind) log.wind.resize(2, steps + 1);

  JointState state{Vector5d(config.q0), Vector5d(config.dq0)};
  Measurement measurement(config.noise, config.seed);
  Vector5d ddq_prev = Vector5d::Zero();

  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * config.dt;
    try {
      const auto [q_m, dq_m] =
          measurement.measure(state.q, state.dq, ddq_prev, config.dt);
      const JointState measured{Vector5d(q_m), Vector5d(dq_m)};
      const auto [u, breakdown] = control::control_wrench(config.controller, measured);

      Vector5d f_ext = Vector5d::Zero();
      Vector2d wind_force = Vector2d::Zero();
      if (config.wind) {
        f_ext = wind_generalized_force(config.plant, state.q, *config.wind, t);
        if (t >= config.wind->t_on && t < config.wind->t_off) {
          wind_force = config.wind->force;
        }
      }

      log.t.push_back(t);
      log.q.col(i) = state.q;
      log.dq.col(i) = state.dq;
      log.u.col(i) = u;
      if (config.noise) {
        log.q_meas.col(i) = measured.q;
        log.dq_meas.col(i) = measured.dq;
      }
      if (config.wind) log.wind.col(i) = wind_force;

      if (i == steps) break;
      ddq_prev = dynamics::forward_dynamics(config.plant, state, u, f_ext);
      state = step(config.plant, state, u, f_ext, config.dt);
    } catch (const RunAborted&) {
      throw;
    } catch (const Error& e) {
      throw RunAborted(t, state.q, state.dq, e.what());
    }
  }
  return log;
}

SimLog run_planar(const ScenarioConfig& config) {
  const std::size_t steps =
      static_cast<std::size_t>(std::llround(config.duration / config.dt));
  SimLog log;
  log.kind = ModelKind::Planar;
  log.dt = config.dt;
  log.t.reserve(steps + 1);
  log.q.resize(2, steps + 1);
  log.dq.resize(2, steps + 1);
  log.u.resize(1, steps + 1);
  if (config.noise) {
    log.q_meas.resize(2, steps + 1);
    log.dq_meas.resize(2, steps + 1);
  }

  const model::PlanarParams plant = model::planar_reduction(config.plant);
  const control::PlanarControllerConfig controller = planar_controller(config);

  PlanarState state{Vector2d(config.q0), Vector2d(config.dq0)};
  Measurement measurement(config.noise, config.seed);
  Vector2d ddq_prev = Vector2d::Zero();

  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * config.dt;
    try {
      const auto [q_m, dq_m] =
          measurement.measure(state.q, state.dq, ddq_prev, config.dt);
      const PlanarState measured{Vector2d(q_m), Vector2d(dq_m)};
      const auto [u, breakdown] = control::planar_control_wrench(controller, measured);

      log.t.push_back(t);
      log.q.col(i) = state.q;
      log.dq.col(i) = state.dq;
      log.u(0, i) = u;
      if (config.noise) {
        log.q_meas.col(i) = measured.q;
        log.dq_meas.col(i) = measured.dq;
      }

      if (i == steps) break;
      ddq_prev = dynamics::planar_forward_dynamics(plant, state, u);
      state = step_planar(plant, state, u, Vector2d::Zero(), config.dt);
    } catch (const RunAborted&) {
      throw;
    } catch (const Error& e) {
      throw RunAborted(t, state.q, state.dq, e.what());
    }
  }
  return log;
}

}  // namespace

SimLog run(const ScenarioConfig& config) {
  validate(config);
  return config.kind == ModelKind::Full ? run_full(config) : run_planar(config);
}

}  // namespace pendsim::sim

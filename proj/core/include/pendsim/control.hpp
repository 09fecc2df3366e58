#pragma once

#include <Eigen/Dense>

#include "pendsim/dynamics.hpp"
#include "pendsim/model.hpp"
#include "pendsim/planar.hpp"
#include "pendsim/types.hpp"

namespace pendsim::control {

enum class Mode { Standard, Coupled };

/// Gains and references of the full-model controller, plus the nominal
/// model the controller evaluates its dynamics on (which may differ from
/// the simulated plant).
struct ControllerConfig {
  Mode mode = Mode::Coupled;
  Matrix3d K_py = (Eigen::Vector3d(4230.0, 4230.0, 30.0)).asDiagonal();
  Matrix3d K_dy = (Eigen::Vector3d(3950.0, 3950.0, 10.0)).asDiagonal();
  Matrix2d K_pc = (Eigen::Vector2d(2200.0, 2200.0)).asDiagonal();
  Matrix2d K_dc = (Eigen::Vector2d(50.0, 50.0)).asDiagonal();
  Vector3d y_ref = Vector3d::Zero();
  Vector3d dy_ref = Vector3d::Zero();
  Vector2d qc_ref = Vector2d::Zero();
  Vector2d dqc_ref = Vector2d::Zero();
  model::ModelParams nominal;
};

/// Planar controller: scalar gains taken from the corresponding channels of
/// the full controller (output gains from the q1 channel, internal gains
/// from the q4 channel).
struct PlanarControllerConfig {
  Mode mode = Mode::Coupled;
  double k_py = 4230.0;
  double k_dy = 3950.0;
  double k_pc = 2200.0;
  double k_dc = 50.0;
  double y_ref = 0.0;
  double dy_ref = 0.0;
  double qc_ref = 0.0;
  double dqc_ref = 0.0;
  model::PlanarParams nominal;
};

/// Throws ValidationError unless all gain matrices are symmetric positive
/// definite.
void validate(const ControllerConfig& cfg);
void validate(const PlanarControllerConfig& cfg);

/// Every intermediate of the control law, exposed for verification.
struct ControlBreakdown {
  Matrix3d Lambda_y;            ///< transformed output inertia
  Vector3d mu_y, rho_y;         ///< transformed output Coriolis, gravity
  Vector2d mu_c, rho_c;         ///< internal-dynamics Coriolis, gravity
  Matrix23 lambda_c;            ///< control effectiveness on the load joints
  Matrix32 G;                   ///< wrench map of the internal reference
  Vector3d R;                   ///< wrench part independent of v_a
  Vector2d v_a;                 ///< standard internal-stabilizing reference
  Vector2d v_a_coupled;         ///< coupled reference (Coupled mode only)
  Vector2d N_c;                 ///< internal closed-loop coupling term
  Vector3d N_y;                 ///< output closed-loop coupling term
  Wrench u;
  double cond_output_map = 0.0; ///< condition number of B^T M^-1 Ju^T
};

struct PlanarBreakdown {
  double Lambda_y, mu_y, rho_y;
  double mu_c, rho_c, lambda_c;
  double G, R;
  double v_a, v_a_coupled;
  double N_c, N_y;
  double u;
  double cond_output_map = 0.0;
};

// --- Dimension-generic PFL stages -----------------------------------------
//
// The same construction serves the 5-DOF model (ny = 3, nc = 2, na = 2) and
// the planar one (ny = nc = na = 1). The first ny coordinates are the
// outputs y = B^T q with B = [I 0]^T; the trailing nc are the internal
// coordinates selected by A = [0 I]. na counts the columns of Lambda_y that
// form G (the wrench channels with inertial coupling to the load).

struct SystemTerms {
  Eigen::MatrixXd M;   // n x n
  Eigen::MatrixXd C;   // n x n
  Eigen::VectorXd g;   // n
  Eigen::MatrixXd Ju;  // ny x n
};

struct OutputTerms {
  Eigen::MatrixXd Lambda_y;
  Eigen::VectorXd mu_y;
  Eigen::VectorXd rho_y;
  double cond = 0.0;
};

struct InternalTerms {
  Eigen::VectorXd mu_c;
  Eigen::VectorXd rho_c;
  Eigen::MatrixXd lambda_c;  // nc x ny
};

/// Condition-number limit for inverting B^T M^-1 Ju^T.
inline constexpr double kConditionLimit = 1e8;
/// Determinant floor for inverting lambda_c G.
inline constexpr double kCouplingDetFloor = 1e-10;

/// Lambda_y = (B^T M^-1 Ju^T)^-1, mu_y = Lambda_y B^T M^-1 C qd,
/// rho_y = Lambda_y B^T M^-1 g. Throws IllConditioned past kConditionLimit.
OutputTerms output_terms(const SystemTerms& terms, const Eigen::VectorXd& dq);

/// mu_c = A M^-1 C qd, rho_c = A M^-1 g, lambda_c = A M^-1 Ju^T.
InternalTerms internal_terms(const SystemTerms& terms, const Eigen::VectorXd& dq);

struct GAndR {
  Eigen::MatrixXd G;  // ny x na, the leading na columns of Lambda_y
  Eigen::VectorXd R;  // mu_y + rho_y - K_dy dy_err - K_py y_err
};

GAndR g_and_r(const OutputTerms& out, const Eigen::MatrixXd& K_dy,
              const Eigen::MatrixXd& K_py, const Eigen::VectorXd& y_err,
              const Eigen::VectorXd& dy_err, int na);

/// v_a = (lambda_c G)^-1 (mu_c + rho_c - lambda_c R - K_dc dqc_err - K_pc qc_err).
/// Throws CouplingSingular when |det(lambda_c G)| < kCouplingDetFloor.
Eigen::VectorXd v_a_standard(const InternalTerms& internal, const GAndR& gr,
                             const Eigen::MatrixXd& K_dc,
                             const Eigen::MatrixXd& K_pc,
                             const Eigen::VectorXd& qc_err,
                             const Eigen::VectorXd& dqc_err);

/// v_a_bar = v_a + (lambda_c G)^-1 lambda_c (-K_dy dy_err - K_py y_err).
Eigen::VectorXd v_a_coupled(const Eigen::VectorXd& v_a,
                            const InternalTerms& internal, const GAndR& gr,
                            const Eigen::MatrixXd& K_dy,
                            const Eigen::MatrixXd& K_py,
                            const Eigen::VectorXd& y_err,
                            const Eigen::VectorXd& dy_err);

// --- Model-specific wrappers ----------------------------------------------

/// Evaluates the full control law on the controller's nominal model at the
/// measured state. Pure function: identical inputs give identical outputs.
std::pair<Wrench, ControlBreakdown> control_wrench(const ControllerConfig& cfg,
                                                   const JointState& measured);

/// Same algebra on externally supplied dynamics terms (used by tests).
std::pair<Wrench, ControlBreakdown> control_wrench_from_terms(
    const ControllerConfig& cfg, const dynamics::DynamicsTerms& terms,
    const JointState& measured);

/// Planar control torque with y = q(0), q_c = q(1).
std::pair<double, PlanarBreakdown> planar_control_wrench(
    const PlanarControllerConfig& cfg, const PlanarState& measured);

std::pair<double, PlanarBreakdown> planar_control_wrench_from_terms(
    const PlanarControllerConfig& cfg, const dynamics::PlanarTerms& terms,
    const PlanarState& measured);

}  // namespace pendsim::control

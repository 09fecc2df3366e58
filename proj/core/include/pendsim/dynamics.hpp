#pragma once

#include <array>

#include "pendsim/model.hpp"
#include "pendsim/types.hpp"

namespace pendsim::dynamics {

/// Manipulator-form terms of the full 5-DOF model evaluated at one state:
///   M(q) qdd + C(q, qd) qd + g(q) = Ju(q)^T u + f_ext.
///
/// M is symmetric positive definite on the workspace, C is built from the
/// Christoffel symbols of M (so Mdot - 2C is skew-symmetric), and Ju maps
/// joint velocities to the platform (xdot, ydot, yawdot).
struct DynamicsTerms {
  Matrix5d M = Matrix5d::Zero();
  Matrix5d C = Matrix5d::Zero();
  Vector5d g = Vector5d::Zero();
  Matrix35 Ju = Matrix35::Zero();
};

/// Position-level kinematics of the chain with exact first and second
/// partials, used by the dynamics assembly and the wind force mapping.
///
/// Axis convention: q1 tilts the upper cable towards +x, q2 towards +y,
/// q3 is platform yaw about the cable axis, q4/q5 tilt the load cable
/// towards the platform-frame +x/+y. Angles are measured from the downward
/// vertical; gravity acts along world -z.
struct Kinematics {
  Vector3d d1;  ///< unit vector from anchor towards the platform
  Vector3d d2;  ///< unit vector from platform towards the load
  Matrix35 J1;  ///< dd1/dq
  Matrix35 J2;  ///< dd2/dq
  std::array<Matrix35, 5> H1;  ///< dJ1/dq_k
  std::array<Matrix35, 5> H2;  ///< dJ2/dq_k
  Matrix3d Rp;                 ///< platform orientation
  std::array<Matrix3d, 5> dRp;
  Matrix35 W;  ///< platform angular velocity map, omega = W qd
  std::array<Matrix35, 5> dW;
};

Kinematics kinematics(const Vector5d& q);

/// Platform and load positions in the world frame (anchor at the origin).
Vector3d platform_position(const model::ModelParams& p, const Vector5d& q);
Vector3d load_position(const model::ModelParams& p, const Vector5d& q);

/// World-xy translational Jacobians of the platform and load points (2x5).
Eigen::Matrix<double, 2, 5> platform_xy_jacobian(const model::ModelParams& p,
                                                 const Vector5d& q);
Eigen::Matrix<double, 2, 5> load_xy_jacobian(const model::ModelParams& p,
                                             const Vector5d& q);

/// Inertia matrix; throws SingularConfiguration if any eigenvalue < 1e-10.
Matrix5d mass_matrix(const model::ModelParams& p, const Vector5d& q);

/// Christoffel-symbol Coriolis/centrifugal matrix (exact partials of M).
Matrix5d coriolis_matrix(const model::ModelParams& p, const Vector5d& q,
                         const Vector5d& dq);

/// Gravity vector g = dV/dq.
Vector5d gravity_vector(const model::ModelParams& p, const Vector5d& q);

/// Exact partials dM/dq_k, exposed for tests of the Christoffel assembly.
std::array<Matrix5d, 5> mass_matrix_partials(const model::ModelParams& p,
                                             const Vector5d& q);

/// Input Jacobian: rows are dx_p/dq, dy_p/dq and dyaw/dq (yaw = q3).
Matrix35 input_jacobian(const model::ModelParams& p, const Vector5d& q);

/// Potential energy (zero level at the anchor plane).
double potential_energy(const model::ModelParams& p, const Vector5d& q);

/// All terms at once; cheaper than separate calls.
DynamicsTerms dynamics_terms(const model::ModelParams& p, const Vector5d& q,
                             const Vector5d& dq);

/// Eigenvalue floor below which the inertia matrix counts as singular.
inline constexpr double kInertiaEigenvalueFloor = 1e-10;

/// qdd = M^-1 (Ju^T u + f_ext - C qd - g).
Vector5d forward_dynamics(const model::ModelParams& p, const JointState& state,
                          const Wrench& u, const Vector5d& f_ext);

/// Same, reusing precomputed terms.
Vector5d forward_dynamics(const DynamicsTerms& terms, const Vector5d& dq,
                          const Wrench& u, const Vector5d& f_ext);

}  // namespace pendsim::dynamics

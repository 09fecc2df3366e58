#pragma once

#include <Eigen/Dense>

namespace pendsim {

using Vector2d = Eigen::Vector2d;
using Vector3d = Eigen::Vector3d;
using Vector5d = Eigen::Matrix<double, 5, 1>;
using Matrix2d = Eigen::Matrix2d;
using Matrix3d = Eigen::Matrix3d;
using Matrix5d = Eigen::Matrix<double, 5, 5>;
using Matrix35 = Eigen::Matrix<double, 3, 5>;
using Matrix23 = Eigen::Matrix<double, 2, 3>;
using Matrix32 = Eigen::Matrix<double, 3, 2>;

/// Platform wrench: world-frame horizontal forces at the platform centre of
/// mass plus the yaw torque, ordered (F_x [N], F_y [N], tau_z [N m]).
using Wrench = Vector3d;

/// Joint angles and velocities of the full chain, ordered (q1..q5).
/// q1,q2 tilt the upper cable, q3 is platform yaw, q4,q5 tilt the load cable.
struct JointState {
  Vector5d q = Vector5d::Zero();
  Vector5d dq = Vector5d::Zero();
};

/// Planar double-pendulum state: q(0) is the actuated shoulder angle,
/// q(1) the passive elbow angle, both measured from the downward vertical
/// (elbow relative to link 1).
struct PlanarState {
  Vector2d q = Vector2d::Zero();
  Vector2d dq = Vector2d::Zero();
};

}  // namespace pendsim

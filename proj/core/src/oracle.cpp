#include "pendsim/oracle.hpp"

#include <cmath>

#include <Eigen/Geometry>

namespace pendsim::dynamics {

namespace {

constexpr double kFdStep = 1e-6;  // time step for velocity differencing

// Exact kinetic energy of a uniform rod whose endpoint velocities are va,
// vb (the velocity field along a rigid rod is linear in arc length).
double rod_kinetic(double mass, const Vector3d& va, const Vector3d& vb) {
  return mass / 6.0 * (va.squaredNorm() + va.dot(vb) + vb.squaredNorm());
}

double rod_kinetic_2d(double mass, const Vector2d& va, const Vector2d& vb) {
  return mass / 6.0 * (va.squaredNorm() + va.dot(vb) + vb.squaredNorm());
}

// Positions written independently of the rotation-chain machinery.
struct Pose {
  Vector3d p_platform;
  Vector3d p_load;
  Matrix3d R_platform;
};

Pose pose_at(const model::ModelParams& p, const Vector5d& q) {
  using Eigen::AngleAxisd;
  const Matrix3d R1 = AngleAxisd(-q(0), Vector3d::UnitY()).toRotationMatrix();
  const Matrix3d R2 = AngleAxisd(q(1), Vector3d::UnitX()).toRotationMatrix();
  const Matrix3d R3 = AngleAxisd(q(2), Vector3d::UnitZ()).toRotationMatrix();
  const Matrix3d R4 = AngleAxisd(-q(3), Vector3d::UnitY()).toRotationMatrix();
  const Matrix3d R5 = AngleAxisd(q(4), Vector3d::UnitX()).toRotationMatrix();
  const Vector3d down(0.0, 0.0, -1.0);

  Pose pose;
  pose.p_platform = p.l1 * (R1 * R2 * down);
  pose.R_platform = R1 * R2 * R3;
  pose.p_load = pose.p_platform + p.l2 * (pose.R_platform * R4 * R5 * down);
  return pose;
}

Vector3d vee(const Matrix3d& skew) {
  return Vector3d(skew(2, 1) - skew(1, 2), skew(0, 2) - skew(2, 0),
                  skew(1, 0) - skew(0, 1)) / 2.0;
}

}  // namespace

Energies lagrangian_oracle(const model::ModelParams& p, const Vector5d& q,
                           const Vector5d& dq) {
  const Pose now = pose_at(p, q);
  const Pose fwd = pose_at(p, q + kFdStep * dq);
  const Pose bwd = pose_at(p, q - kFdStep * dq);

  const Vector3d v_p = (fwd.p_platform - bwd.p_platform) / (2.0 * kFdStep);
  const Vector3d v_l = (fwd.p_load - bwd.p_load) / (2.0 * kFdStep);
  const Matrix3d Rdot = (fwd.R_platform - bwd.R_platform) / (2.0 * kFdStep);
  const Vector3d omega = vee(Rdot * now.R_platform.transpose());

  const Matrix3d I_p = Vector3d(p.I_xx, p.I_yy, p.I_zz).asDiagonal();
  const Matrix3d I_world = now.R_platform * I_p * now.R_platform.transpose();

  Energies e;
  e.kinetic = rod_kinetic(p.m_c1, Vector3d::Zero(), v_p) +
              0.5 * p.m_p * v_p.squaredNorm() +
              0.5 * omega.dot(I_world * omega) +
              rod_kinetic(p.m_c2, v_p, v_l) +
              0.5 * p.m_l * v_l.squaredNorm();
  e.potential = p.g0 * (p.m_c1 * now.p_platform(2) / 2.0 +
                        p.m_p * now.p_platform(2) +
                        p.m_c2 * (now.p_platform(2) + now.p_load(2)) / 2.0 +
                        p.m_l * now.p_load(2));
  return e;
}

namespace {

struct PlanarPose {
  Vector2d p1;  // tip of link 1 (x, z)
  Vector2d p2;  // tip of link 2
};

PlanarPose planar_pose_at(const model::PlanarParams& p, const Vector2d& q) {
  PlanarPose pose;
  pose.p1 = p.link1.length * Vector2d(std::sin(q(0)), -std::cos(q(0)));
  const double th2 = q(0) + q(1);
  pose.p2 = pose.p1 + p.link2.length * Vector2d(std::sin(th2), -std::cos(th2));
  return pose;
}

}  // namespace

Energies planar_lagrangian_oracle(const model::PlanarParams& p,
                                  const Vector2d& q, const Vector2d& dq) {
  const PlanarPose now = planar_pose_at(p, q);
  const PlanarPose fwd = planar_pose_at(p, q + kFdStep * dq);
  const PlanarPose bwd = planar_pose_at(p, q - kFdStep * dq);

  const Vector2d v1 = (fwd.p1 - bwd.p1) / (2.0 * kFdStep);
  const Vector2d v2 = (fwd.p2 - bwd.p2) / (2.0 * kFdStep);

  Energies e;
  e.kinetic = rod_kinetic_2d(p.link1.rod_mass, Vector2d::Zero(), v1) +
              0.5 * p.link1.tip_mass * v1.squaredNorm() +
              rod_kinetic_2d(p.link2.rod_mass, v1, v2) +
              0.5 * p.link2.tip_mass * v2.squaredNorm();
  e.potential = p.g0 * (p.link1.rod_mass * now.p1(1) / 2.0 +
                        p.link1.tip_mass * now.p1(1) +
                        p.link2.rod_mass * (now.p1(1) + now.p2(1)) / 2.0 +
                        p.link2.tip_mass * now.p2(1));
  return e;
}

}  // namespace pendsim::dynamics

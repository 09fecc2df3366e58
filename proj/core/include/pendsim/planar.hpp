#pragma once

#include <array>

#include "pendsim/model.hpp"
#include "pendsim/types.hpp"

namespace pendsim::dynamics {

/// Closed-form manipulator terms of the planar double pendulum (uniform rods
/// with tip masses, elbow angle relative to link 1). The shoulder q(0) is
/// actuated by a direct torque, so the input map is the row vector (1, 0).
struct PlanarTerms {
  Matrix2d M = Matrix2d::Zero();
  Matrix2d C = Matrix2d::Zero();
  Vector2d g = Vector2d::Zero();
  Eigen::RowVector2d Ju = Eigen::RowVector2d(1.0, 0.0);
};

Matrix2d planar_mass_matrix(const model::PlanarParams& p, const Vector2d& q);
Matrix2d planar_coriolis_matrix(const model::PlanarParams& p, const Vector2d& q,
                                const Vector2d& dq);
Vector2d planar_gravity_vector(const model::PlanarParams& p, const Vector2d& q);
std::array<Matrix2d, 2> planar_mass_matrix_partials(const model::PlanarParams& p,
                                                    const Vector2d& q);
double planar_potential_energy(const model::PlanarParams& p, const Vector2d& q);

PlanarTerms planar_terms(const model::PlanarParams& p, const Vector2d& q,
                         const Vector2d& dq);

/// qdd = M^-1 (B u + f_ext - C qd - g) with B = (1, 0)^T.
Vector2d planar_forward_dynamics(const model::PlanarParams& p,
                                 const PlanarState& state, double u,
                                 const Vector2d& f_ext = Vector2d::Zero());

Vector2d planar_forward_dynamics(const PlanarTerms& terms, const Vector2d& dq,
                                 double u, const Vector2d& f_ext);

}  // namespace pendsim::dynamics

#pragma once

#include "pendsim/model.hpp"
#include "pendsim/types.hpp"

namespace pendsim::dynamics {

struct Energies {
  double kinetic = 0.0;
  double potential = 0.0;
  double total() const { return kinetic + potential; }
};

/// Kinetic and potential energy computed straight from link kinematics:
/// point velocities by central differencing of independently written
/// position formulas, rod energies by the exact endpoint-velocity integral,
/// the platform's rotational energy from a finite-differenced rotation
/// matrix. Shares no code with mass_matrix/coriolis_matrix/gravity_vector,
/// so it serves as an oracle for them.
Energies lagrangian_oracle(const model::ModelParams& p, const Vector5d& q,
                           const Vector5d& dq);

Energies planar_lagrangian_oracle(const model::PlanarParams& p,
                                  const Vector2d& q, const Vector2d& dq);

}  // namespace pendsim::dynamics

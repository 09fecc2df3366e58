#pragma once

#include "pendsim/types.hpp"

namespace pendsim::model {

/// Physical constants of the suspended chain: anchored cable, platform body,
/// load cable, point load. Cables are uniform slender rods with mass.
struct ModelParams {
  double m_p = 4.06;    ///< platform mass [kg]
  double m_l = 1.4;     ///< load mass [kg]
  double I_xx = 0.0646; ///< platform principal inertias [kg m^2]
  double I_yy = 0.0646;
  double I_zz = 0.0682;
  double l1 = 1.5;      ///< upper-cable length [m]
  double l2 = 0.75;     ///< load-cable length [m]
  double m_c1 = 0.15;   ///< upper-cable mass [kg]
  double m_c2 = 0.10;   ///< load-cable mass [kg]
  double g0 = 9.81;     ///< gravitational acceleration [m/s^2]
};

/// One link of the planar reduction: a uniform rod with a point mass at its
/// tip.
struct PlanarLink {
  double length = 0.0;
  double rod_mass = 0.0;
  double tip_mass = 0.0;
};

/// Parameters of the 2-DOF planar double pendulum used for the stability
/// study: link 1 is the upper cable plus the platform as a tip mass, link 2
/// the load cable plus the load.
struct PlanarParams {
  PlanarLink link1;
  PlanarLink link2;
  double g0 = 9.81;
};

/// Nominal parameter set used throughout the simulation studies.
ModelParams default_params();

/// Perturbed plant used for the model-mismatch robustness study: heavier
/// platform and load, larger inertias; cables unchanged.
ModelParams uncertain_params();

/// Throws NonPositiveParameter naming the first offending field.
void validate(const ModelParams& params);
void validate(const PlanarParams& params);

/// Maps the full model onto the planar double pendulum: each link is the
/// corresponding cable as a uniform rod plus the corresponding body as a tip
/// point mass.
PlanarParams planar_reduction(const ModelParams& params);

/// Default clearance from the |q2|, |q5| = pi/2 representation singularities.
inline constexpr double kWorkspaceMargin = 0.05;

/// True iff all entries are finite and the tilt coordinates q2, q5 stay
/// clear of the representation singularity by `margin`.
bool in_workspace(const Vector5d& q, double margin = kWorkspaceMargin);
bool in_workspace(const JointState& state, double margin = kWorkspaceMargin);

/// Planar variant: the elbow coordinate q(1) is the singular one.
bool in_workspace_planar(const Vector2d& q, double margin = kWorkspaceMargin);

}  // namespace pendsim::model

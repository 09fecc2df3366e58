#include "pendsim/model.hpp"

#include <cmath>

#include "pendsim/errors.hpp"

namespace pendsim::model {

ModelParams default_params() { return ModelParams{}; }

ModelParams uncertain_params() {
  ModelParams p;
  p.m_p = 10.06;
  p.m_l = 20.4;
  p.I_xx = 0.75;
  p.I_yy = 0.75;
  p.I_zz = 0.5;
  return p;
}

namespace {
void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw NonPositiveParameter(name);
  }
}
}  // namespace

void validate(const ModelParams& p) {
  require_positive(p.m_p, "m_p");
  require_positive(p.m_l, "m_l");
  require_positive(p.I_xx, "I_xx");
  require_positive(p.I_yy, "I_yy");
  require_positive(p.I_zz, "I_zz");
  require_positive(p.l1, "l1");
  require_positive(p.l2, "l2");
  require_positive(p.m_c1, "m_c1");
  require_positive(p.m_c2, "m_c2");
  require_positive(p.g0, "g0");
}

void validate(const PlanarParams& p) {
  require_positive(p.link1.length, "link1.length");
  require_positive(p.link1.rod_mass, "link1.rod_mass");
  require_positive(p.link1.tip_mass, "link1.tip_mass");
  require_positive(p.link2.length, "link2.length");
  require_positive(p.link2.rod_mass, "link2.rod_mass");
  require_positive(p.link2.tip_mass, "link2.tip_mass");
  require_positive(p.g0, "g0");
}

PlanarParams planar_reduction(const ModelParams& params) {
  validate(params);
  PlanarParams p;
  p.link1 = {params.l1, params.m_c1, params.m_p};
  p.link2 = {params.l2, params.m_c2, params.m_l};
  p.g0 = params.g0;
  return p;
}

bool in_workspace(const Vector5d& q, double margin) {
  if (!q.allFinite()) return false;
  const double limit = M_PI / 2.0 - margin;
  return std::abs(q(1)) < limit && std::abs(q(4)) < limit;
}

bool in_workspace(const JointState& state, double margin) {
  return state.dq.allFinite() && in_workspace(state.q, margin);
}

bool in_workspace_planar(const Vector2d& q, double margin) {
  if (!q.allFinite()) return false;
  return std::abs(q(1)) < M_PI - margin;  // elbow fold-back, not pi/2
}

}  // namespace pendsim::model

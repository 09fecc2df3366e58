#include "pendsim/planar.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "pendsim/dynamics.hpp"
#include "pendsim/errors.hpp"

namespace pendsim::dynamics {

namespace {

struct PlanarCoefficients {
  double a;   // l1^2 (m_r1/3 + m_t1 + m_r2 + m_t2)
  double b;   // l2^2 (m_r2/3 + m_t2)
  double c;   // l1 l2 (m_r2/2 + m_t2)
  double h1;  // g l1 (m_r1/2 + m_t1 + m_r2 + m_t2)
  double h2;  // g l2 (m_r2/2 + m_t2)
};

PlanarCoefficients coefficients(const model::PlanarParams& p) {
  const auto& L1 = p.link1;
  const auto& L2 = p.link2;
  PlanarCoefficients c;
  c.a = L1.length * L1.length *
        (L1.rod_mass / 3.0 + L1.tip_mass + L2.rod_mass + L2.tip_mass);
  c.b = L2.length * L2.length * (L2.rod_mass / 3.0 + L2.tip_mass);
  c.c = L1.length * L2.length * (L2.rod_mass / 2.0 + L2.tip_mass);
  c.h1 = p.g0 * L1.length *
         (L1.rod_mass / 2.0 + L1.tip_mass + L2.rod_mass + L2.tip_mass);
  c.h2 = p.g0 * L2.length * (L2.rod_mass / 2.0 + L2.tip_mass);
  return c;
}

}  // namespace

Matrix2d planar_mass_matrix(const model::PlanarParams& p, const Vector2d& q) {
  const PlanarCoefficients c = coefficients(p);
  const double c2 = std::cos(q(1));
  Matrix2d M;
  M << c.a + c.b + 2.0 * c.c * c2, c.b + c.c * c2,
       c.b + c.c * c2, c.b;
  Eigen::SelfAdjointEigenSolver<Matrix2d> es(M, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < kInertiaEigenvalueFloor) {
    throw SingularConfiguration(min_eig);
  }
  return M;
}

std::array<Matrix2d, 2> planar_mass_matrix_partials(const model::PlanarParams& p,
                                                    const Vector2d& q) {
  const PlanarCoefficients c = coefficients(p);
  const double s2 = std::sin(q(1));
  std::array<Matrix2d, 2> dM;
  dM[0].setZero();
  dM[1] << -2.0 * c.c * s2, -c.c * s2,
           -c.c * s2, 0.0;
  return dM;
}

Matrix2d planar_coriolis_matrix(const model::PlanarParams& p, const Vector2d& q,
                                const Vector2d& dq) {
  const PlanarCoefficients c = coefficients(p);
  const double h = c.c * std::sin(q(1));
  Matrix2d C;
  C << -h * dq(1), -h * (dq(0) + dq(1)),
       h * dq(0), 0.0;
  return C;
}

Vector2d planar_gravity_vector(const model::PlanarParams& p, const Vector2d& q) {
  const PlanarCoefficients c = coefficients(p);
  const double s1 = std::sin(q(0));
  const double s12 = std::sin(q(0) + q(1));
  return Vector2d(c.h1 * s1 + c.h2 * s12, c.h2 * s12);
}

double planar_potential_energy(const model::PlanarParams& p, const Vector2d& q) {
  const PlanarCoefficients c = coefficients(p);
  return -c.h1 * std::cos(q(0)) - c.h2 * std::cos(q(0) + q(1));
}

PlanarTerms planar_terms(const model::PlanarParams& p, const Vector2d& q,
                         const Vector2d& dq) {
  PlanarTerms t;
  t.M = planar_mass_matrix(p, q);
  t.C = planar_coriolis_matrix(p, q, dq);
  t.g = planar_gravity_vector(p, q);
  t.Ju = Eigen::RowVector2d(1.0, 0.0);
  return t;
}

Vector2d planar_forward_dynamics(const PlanarTerms& terms, const Vector2d& dq,
                                 double u, const Vector2d& f_ext) {
  const Vector2d rhs =
      terms.Ju.transpose() * u + f_ext - terms.C * dq - terms.g;
  return terms.M.ldlt().solve(rhs);
}

Vector2d planar_forward_dynamics(const model::PlanarParams& p,
                                 const PlanarState& state, double u,
                                 const Vector2d& f_ext) {
  return planar_forward_dynamics(planar_terms(p, state.q, state.dq), state.dq,
                                 u, f_ext);
}

}  // namespace pendsim::dynamics

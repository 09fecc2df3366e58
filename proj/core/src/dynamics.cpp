#include "pendsim/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include "pendsim/errors.hpp"
#include "pendsim/rotation_chain.hpp"

namespace pendsim::dynamics {

namespace {

using Axis = RotationChain::Axis;

// Joint axes of the chain. Positive q1/q4 tilt towards world/platform +x,
// positive q2/q5 towards +y, q3 is yaw about the cable-aligned platform z.
// This sign pairing makes B^T M^-1 Ju^T positive-diagonal at q = 0, which
// the coupled control law requires for closed-loop stability.
const RotationChain& chain() {
  static const RotationChain c{{Axis::Y, -1.0},
                               {Axis::X, 1.0},
                               {Axis::Z, 1.0},
                               {Axis::Y, -1.0},
                               {Axis::X, 1.0}};
  return c;
}

const Vector3d kDown(0.0, 0.0, -1.0);

struct MassCoefficients {
  double a1, a2, a12;  // translational quadratic-form weights
  double w1, w2;       // potential-energy weights
  Matrix3d I_p;        // platform inertia in its body frame
};

MassCoefficients coefficients(const model::ModelParams& p) {
  MassCoefficients c;
  c.a1 = p.l1 * p.l1 * (p.m_c1 / 3.0 + p.m_p + p.m_c2 + p.m_l);
  c.a2 = p.l2 * p.l2 * (p.m_c2 / 3.0 + p.m_l);
  c.a12 = p.l1 * p.l2 * (p.m_c2 / 2.0 + p.m_l);
  c.w1 = p.l1 * (p.m_c1 / 2.0 + p.m_p + p.m_c2 + p.m_l);
  c.w2 = p.l2 * (p.m_c2 / 2.0 + p.m_l);
  c.I_p = Vector3d(p.I_xx, p.I_yy, p.I_zz).asDiagonal();
  return c;
}

Matrix5d assemble_mass(const MassCoefficients& c, const Kinematics& k) {
  const Matrix3d Iw = k.Rp * c.I_p * k.Rp.transpose();
  Matrix5d M = c.a1 * k.J1.transpose() * k.J1 +
               c.a2 * k.J2.transpose() * k.J2 +
               c.a12 * (k.J1.transpose() * k.J2 + k.J2.transpose() * k.J1) +
               k.W.transpose() * Iw * k.W;
  return 0.5 * (M + M.transpose());  // kill round-off asymmetry
}

std::array<Matrix5d, 5> assemble_mass_partials(const MassCoefficients& c,
                                               const Kinematics& k) {
  const Matrix3d Iw = k.Rp * c.I_p * k.Rp.transpose();
  std::array<Matrix5d, 5> dM;
  for (int n = 0; n < 5; ++n) {
    const Matrix35& dJ1 = k.H1[n];
    const Matrix35& dJ2 = k.H2[n];
    const Matrix3d dIw = k.dRp[n] * c.I_p * k.Rp.transpose() +
                         k.Rp * c.I_p * k.dRp[n].transpose();
    Matrix5d d = c.a1 * (dJ1.transpose() * k.J1 + k.J1.transpose() * dJ1) +
                 c.a2 * (dJ2.transpose() * k.J2 + k.J2.transpose() * dJ2) +
                 c.a12 * (dJ1.transpose() * k.J2 + k.J1.transpose() * dJ2 +
                          dJ2.transpose() * k.J1 + k.J2.transpose() * dJ1) +
                 k.dW[n].transpose() * Iw * k.W + k.W.transpose() * dIw * k.W +
                 k.W.transpose() * Iw * k.dW[n];
    dM[n] = 0.5 * (d + d.transpose());
  }
  return dM;
}

Matrix5d christoffel(const std::array<Matrix5d, 5>& dM, const Vector5d& dq) {
  Matrix5d C = Matrix5d::Zero();
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 5; ++k) {
        acc += (dM[k](i, j) + dM[j](i, k) - dM[i](j, k)) * dq(k);
      }
      C(i, j) = 0.5 * acc;
    }
  }
  return C;
}

void check_spd(const Matrix5d& M) {
  Eigen::SelfAdjointEigenSolver<Matrix5d> es(M, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < kInertiaEigenvalueFloor) {
    throw SingularConfiguration(min_eig);
  }
}

}  // namespace

Kinematics kinematics(const Vector5d& q) {
  const RotationChain& ch = chain();
  const RotationChain::Eval e = ch.eval(q);

  Kinematics k;
  k.d1 = e.value(2, kDown);
  k.d2 = e.value(5, kDown);
  for (int j = 0; j < 5; ++j) {
    k.J1.col(j) = e.deriv(j, 2, kDown);
    k.J2.col(j) = e.deriv(j, 5, kDown);
  }
  for (int n = 0; n < 5; ++n) {
    for (int j = 0; j < 5; ++j) {
      k.H1[n].col(j) = e.dderiv(j, n, 2, kDown);
      k.H2[n].col(j) = e.dderiv(j, n, 5, kDown);
    }
  }
  k.Rp = e.rot(3);
  for (int n = 0; n < 5; ++n) k.dRp[n] = e.rot_deriv(n, 3);

  k.W.setZero();
  for (int n = 0; n < 5; ++n) k.dW[n].setZero();
  for (int j = 0; j < 3; ++j) {
    const Vector3d axis = ch.axis_vector(j);
    k.W.col(j) = e.value(j, axis);
    for (int n = 0; n < j; ++n) {
      k.dW[n].col(j) = e.deriv(n, j, axis);
    }
  }
  return k;
}

Vector3d platform_position(const model::ModelParams& p, const Vector5d& q) {
  return p.l1 * kinematics(q).d1;
}

Vector3d load_position(const model::ModelParams& p, const Vector5d& q) {
  const Kinematics k = kinematics(q);
  return p.l1 * k.d1 + p.l2 * k.d2;
}

Eigen::Matrix<double, 2, 5> platform_xy_jacobian(const model::ModelParams& p,
                                                 const Vector5d& q) {
  return p.l1 * kinematics(q).J1.topRows<2>();
}

Eigen::Matrix<double, 2, 5> load_xy_jacobian(const model::ModelParams& p,
                                             const Vector5d& q) {
  const Kinematics k = kinematics(q);
  return p.l1 * k.J1.topRows<2>() + p.l2 * k.J2.topRows<2>();
}

Matrix5d mass_matrix(const model::ModelParams& p, const Vector5d& q) {
  const Matrix5d M = assemble_mass(coefficients(p), kinematics(q));
  check_spd(M);
  return M;
}

std::array<Matrix5d, 5> mass_matrix_partials(const model::ModelParams& p,
                                             const Vector5d& q) {
  return assemble_mass_partials(coefficients(p), kinematics(q));
}

Matrix5d coriolis_matrix(const model::ModelParams& p, const Vector5d& q,
                         const Vector5d& dq) {
  return christoffel(assemble_mass_partials(coefficients(p), kinematics(q)), dq);
}

Vector5d gravity_vector(const model::ModelParams& p, const Vector5d& q) {
  const MassCoefficients c = coefficients(p);
  const Kinematics k = kinematics(q);
  return p.g0 * (c.w1 * k.J1.row(2).transpose() + c.w2 * k.J2.row(2).transpose());
}

double potential_energy(const model::ModelParams& p, const Vector5d& q) {
  const MassCoefficients c = coefficients(p);
  const Kinematics k = kinematics(q);
  return p.g0 * (c.w1 * k.d1(2) + c.w2 * k.d2(2));
}

Matrix35 input_jacobian(const model::ModelParams& p, const Vector5d& q) {
  const Kinematics k = kinematics(q);
  Matrix35 Ju = Matrix35::Zero();
  Ju.topRows<2>() = p.l1 * k.J1.topRows<2>();
  Ju(2, 2) = 1.0;  // yaw = q3
  return Ju;
}

DynamicsTerms dynamics_terms(const model::ModelParams& p, const Vector5d& q,
                             const Vector5d& dq) {
  const MassCoefficients c = coefficients(p);
  const Kinematics k = kinematics(q);

  DynamicsTerms t;
  t.M = assemble_mass(c, k);
  check_spd(t.M);
  t.C = christoffel(assemble_mass_partials(c, k), dq);
  t.g = p.g0 * (c.w1 * k.J1.row(2).transpose() + c.w2 * k.J2.row(2).transpose());
  t.Ju.setZero();
  t.Ju.topRows<2>() = p.l1 * k.J1.topRows<2>();
  t.Ju(2, 2) = 1.0;
  return t;
}

Vector5d forward_dynamics(const DynamicsTerms& terms, const Vector5d& dq,
                          const Wrench& u, const Vector5d& f_ext) {
  const Vector5d rhs = terms.Ju.transpose() * u + f_ext - terms.C * dq - terms.g;
  Eigen::SelfAdjointEigenSolver<Matrix5d> es(terms.M);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < kInertiaEigenvalueFloor) {
    throw SingularConfiguration(min_eig);
  }
  return es.eigenvectors() *
         (es.eigenvalues().cwiseInverse().asDiagonal() *
          (es.eigenvectors().transpose() * rhs));
}

Vector5d forward_dynamics(const model::ModelParams& p, const JointState& state,
                          const Wrench& u, const Vector5d& f_ext) {
  return forward_dynamics(dynamics_terms(p, state.q, state.dq), state.dq, u,
                          f_ext);
}

}  // namespace pendsim::dynamics

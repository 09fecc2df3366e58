#include "pendsim/rotation_chain.hpp"

#include <cassert>
#include <cmath>

namespace pendsim {

Matrix3d RotationChain::skew_generator(Axis axis) {
  Matrix3d g = Matrix3d::Zero();
  switch (axis) {
    case Axis::X:
      g(1, 2) = -1.0;
      g(2, 1) = 1.0;
      break;
    case Axis::Y:
      g(0, 2) = 1.0;
      g(2, 0) = -1.0;
      break;
    case Axis::Z:
      g(0, 1) = -1.0;
      g(1, 0) = 1.0;
      break;
  }
  return g;
}

Matrix3d RotationChain::rotation(Axis axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Matrix3d r = Matrix3d::Identity();
  switch (axis) {
    case Axis::X:
      r(1, 1) = c;
      r(1, 2) = -s;
      r(2, 1) = s;
      r(2, 2) = c;
      break;
    case Axis::Y:
      r(0, 0) = c;
      r(0, 2) = s;
      r(2, 0) = -s;
      r(2, 2) = c;
      break;
    case Axis::Z:
      r(0, 0) = c;
      r(0, 1) = -s;
      r(1, 0) = s;
      r(1, 1) = c;
      break;
  }
  return r;
}

RotationChain::RotationChain(std::initializer_list<Joint> joints) {
  assert(joints.size() <= kMaxJoints);
  for (const Joint& j : joints) {
    joints_[n_] = j;
    gen_[n_] = j.sign * skew_generator(j.axis);
    ++n_;
  }
}

Vector3d RotationChain::axis_vector(int k) const {
  Vector3d v = Vector3d::Zero();
  switch (joints_[k].axis) {
    case Axis::X: v(0) = 1.0; break;
    case Axis::Y: v(1) = 1.0; break;
    case Axis::Z: v(2) = 1.0; break;
  }
  return joints_[k].sign * v;
}

RotationChain::Eval RotationChain::eval(
    const Eigen::Ref<const Eigen::VectorXd>& q) const {
  assert(q.size() == n_);
  Eval e;
  e.chain_ = this;
  e.n_ = n_;

  std::array<Matrix3d, kMaxJoints> R;
  for (int k = 0; k < n_; ++k) {
    R[k] = rotation(joints_[k].axis, joints_[k].sign * q(k));
  }

  e.prefix_[0] = Matrix3d::Identity();
  for (int k = 0; k < n_; ++k) {
    e.prefix_[k + 1] = e.prefix_[k] * R[k];
  }
  // mid(j, k) = R_j .. R_{k-1}; mid(j, j) = I.
  for (int j = 0; j < n_; ++j) {
    e.mid_[j][j] = Matrix3d::Identity();
    for (int k = j; k < n_; ++k) {
      e.mid_[j][k + 1] = e.mid_[j][k] * R[k];
    }
  }
  return e;
}

Vector3d RotationChain::Eval::value(int m, const Vector3d& c) const {
  return prefix_[m] * c;
}

Vector3d RotationChain::Eval::deriv(int j, int m, const Vector3d& c) const {
  if (j >= m) return Vector3d::Zero();
  return prefix_[j] * (chain_->gen_[j] * (mid_[j][m] * c));
}

Vector3d RotationChain::Eval::dderiv(int j, int k, int m,
                                     const Vector3d& c) const {
  if (j > k) std::swap(j, k);
  if (k >= m) return Vector3d::Zero();
  return prefix_[j] *
         (chain_->gen_[j] * (mid_[j][k] * (chain_->gen_[k] * (mid_[k][m] * c))));
}

Matrix3d RotationChain::Eval::rot_deriv(int j, int m) const {
  if (j >= m) return Matrix3d::Zero();
  return prefix_[j] * chain_->gen_[j] * mid_[j][m];
}

}  // namespace pendsim

#pragma once

#include <array>

#include "pendsim/types.hpp"

namespace pendsim {

/// A short chain of elementary rotations R_0(q_0) ... R_{n-1}(q_{n-1}),
/// each about a fixed coordinate axis with a fixed sign, evaluated together
/// with exact first and second partial derivatives.
///
/// Derivatives follow from dR_k/dq_k = G_k R_k with G_k the (signed) skew
/// generator of the axis, so a partial derivative of a product inserts G_k
/// at position k:
///   d/dq_j (R_0..R_{m-1}) = P_j G_j M_{j,m}
/// with P_j = R_0..R_{j-1} and M_{j,k} = R_j..R_{k-1}.
class RotationChain {
 public:
  enum class Axis { X, Y, Z };

  struct Joint {
    Axis axis;
    double sign;  // +1 or -1
  };

  static constexpr int kMaxJoints = 5;

  RotationChain(std::initializer_list<Joint> joints);

  int size() const { return n_; }
  const Joint& joint(int k) const { return joints_[k]; }

  /// Signed generator G_k of joint k.
  const Matrix3d& generator(int k) const { return gen_[k]; }

  /// Signed unit axis vector of joint k in its parent frame.
  Vector3d axis_vector(int k) const;

  /// All products needed for values and first/second partials at one q.
  class Eval {
   public:
    /// Product R_0..R_{m-1} (m = 0 gives the identity).
    const Matrix3d& prefix(int m) const { return prefix_[m]; }

    /// Product R_j..R_{k-1} for 0 <= j <= k <= n.
    const Matrix3d& mid(int j, int k) const { return mid_[j][k]; }

    /// v(q) = R_0..R_{m-1} c.
    Vector3d value(int m, const Vector3d& c) const;

    /// dv/dq_j; zero when j >= m.
    Vector3d deriv(int j, int m, const Vector3d& c) const;

    /// d^2 v / dq_j dq_k (any order of j, k); zero when either index >= m.
    Vector3d dderiv(int j, int k, int m, const Vector3d& c) const;

    /// R(q) = R_0..R_{m-1} as a matrix, and its first partials.
    const Matrix3d& rot(int m) const { return prefix_[m]; }
    Matrix3d rot_deriv(int j, int m) const;

   private:
    friend class RotationChain;
    const RotationChain* chain_ = nullptr;
    int n_ = 0;
    std::array<Matrix3d, kMaxJoints + 1> prefix_;
    std::array<std::array<Matrix3d, kMaxJoints + 1>, kMaxJoints> mid_;
  };

  Eval eval(const Eigen::Ref<const Eigen::VectorXd>& q) const;

  /// Elementary rotation about `axis` by `angle`.
  static Matrix3d rotation(Axis axis, double angle);
  /// Skew generator of `axis`.
  static Matrix3d skew_generator(Axis axis);

 private:
  int n_ = 0;
  std::array<Joint, kMaxJoints> joints_{};
  std::array<Matrix3d, kMaxJoints> gen_{};
};

}  // namespace pendsim

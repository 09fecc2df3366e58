#pragma once

#include <stdexcept>
#include <string>

#include "pendsim/types.hpp"

namespace pendsim {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical parameter violated its positivity constraint.
class NonPositiveParameter : public Error {
 public:
  explicit NonPositiveParameter(std::string field)
      : Error("non-positive parameter: " + field), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// The inertia matrix lost positive definiteness (eigenvalue below floor).
class SingularConfiguration : public Error {
 public:
  explicit SingularConfiguration(double min_eigenvalue)
      : Error("singular configuration: min inertia eigenvalue " +
              std::to_string(min_eigenvalue)),
        min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// The output-dynamics map B^T M^-1 Ju^T is too ill-conditioned to invert.
class IllConditioned : public Error {
 public:
  explicit IllConditioned(double cond)
      : Error("output map ill-conditioned: cond = " + std::to_string(cond)),
        cond_(cond) {}
  double cond() const { return cond_; }

 private:
  double cond_;
};

/// The inertial coupling lambda_c * G is (numerically) singular, so the
/// internal-stabilizing reference cannot be computed.
class CouplingSingular : public Error {
 public:
  explicit CouplingSingular(double det)
      : Error("inertial coupling singular: |det(lambda_c G)| = " +
              std::to_string(det)),
        det_(det) {}
  double det() const { return det_; }

 private:
  double det_;
};

/// Linearization was requested at a point that is not an equilibrium of the
/// closed loop.
class NotAnEquilibrium : public Error {
 public:
  explicit NotAnEquilibrium(double residual)
      : Error("not an equilibrium: ||xdot|| = " + std::to_string(residual)),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Scenario configuration file could not be parsed.
class ParseError : public Error {
 public:
  ParseError(int line, std::string reason)
      : Error("parse error at line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(std::move(reason)) {}
  int line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  int line_;
  std::string reason_;
};

/// A semantically invalid configuration (bad value, failed invariant).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A closed-loop run hit a controller or dynamics error and was aborted.
class RunAborted : public Error {
 public:
  RunAborted(double t, Eigen::VectorXd q, Eigen::VectorXd dq, std::string cause)
      : Error("run aborted at t = " + std::to_string(t) + ": " + cause),
        t_(t),
        q_(std::move(q)),
        dq_(std::move(dq)),
        cause_(std::move(cause)) {}
  double t() const { return t_; }
  const Eigen::VectorXd& q() const { return q_; }
  const Eigen::VectorXd& dq() const { return dq_; }
  const std::string& cause() const { return cause_; }

 private:
  double t_;
  Eigen::VectorXd q_, dq_;
  std::string cause_;
};

}  // namespace pendsim

#include "pendsim/control.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "pendsim/errors.hpp"

namespace pendsim::control {

namespace {

void require_spd(const Eigen::MatrixXd& K, const char* name) {
  if (!K.isApprox(K.transpose(), 1e-12)) {
    throw ValidationError(std::string(name) + " must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw ValidationError(std::string(name) + " must be positive definite");
  }
}

}  // namespace

void validate(const ControllerConfig& cfg) {
  require_spd(cfg.K_py, "K_py");
  require_spd(cfg.K_dy, "K_dy");
  require_spd(cfg.K_pc, "K_pc");
  require_spd(cfg.K_dc, "K_dc");
  model::validate(cfg.nominal);
}

void validate(const PlanarControllerConfig& cfg) {
  if (cfg.k_py <= 0 || cfg.k_dy <= 0 || cfg.k_pc <= 0 || cfg.k_dc <= 0) {
    throw ValidationError("planar gains must be positive");
  }
  model::validate(cfg.nominal);
}

OutputTerms output_terms(const SystemTerms& terms, const Eigen::VectorXd& dq) {
  const int ny = static_cast<int>(terms.Ju.rows());

  const auto ldlt = terms.M.ldlt();
  const Eigen::MatrixXd Minv_JuT = ldlt.solve(terms.Ju.transpose());  // n x ny
  const Eigen::MatrixXd T = Minv_JuT.topRows(ny);  // B^T M^-1 Ju^T

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(T);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  const double cond = smin > 0.0 ? smax / smin
                                 : std::numeric_limits<double>::infinity();
  if (!(cond < kConditionLimit)) {
    throw IllConditioned(cond);
  }

  OutputTerms out;
  out.cond = cond;
  out.Lambda_y = T.partialPivLu().inverse();
  out.mu_y = out.Lambda_y * ldlt.solve(terms.C * dq).head(ny);
  out.rho_y = out.Lambda_y * ldlt.solve(terms.g).head(ny);
  return out;
}

InternalTerms internal_terms(const SystemTerms& terms, const Eigen::VectorXd& dq) {
  const int n = static_cast<int>(terms.M.rows());
  const int ny = static_cast<int>(terms.Ju.rows());
  const int nc = n - ny;

  const auto ldlt = terms.M.ldlt();
  InternalTerms in;
  in.mu_c = ldlt.solve(terms.C * dq).tail(nc);
  in.rho_c = ldlt.solve(terms.g).tail(nc);
  in.lambda_c = ldlt.solve(terms.Ju.transpose()).bottomRows(nc);
  return in;
}

GAndR g_and_r(const OutputTerms& out, const Eigen::MatrixXd& K_dy,
              const Eigen::MatrixXd& K_py, const Eigen::VectorXd& y_err,
              const Eigen::VectorXd& dy_err, int na) {
  GAndR gr;
  gr.G = out.Lambda_y.leftCols(na);
  gr.R = out.mu_y + out.rho_y - K_dy * dy_err - K_py * y_err;
  return gr;
}

namespace {

Eigen::PartialPivLU<Eigen::MatrixXd> coupling_lu(const InternalTerms& internal,
                                                 const GAndR& gr) {
  const Eigen::MatrixXd S = internal.lambda_c * gr.G;
  const double det = S.determinant();
  if (std::abs(det) < kCouplingDetFloor) {
    throw CouplingSingular(std::abs(det));
  }
  return Eigen::PartialPivLU<Eigen::MatrixXd>(S);
}

}  // namespace

Eigen::VectorXd v_a_standard(const InternalTerms& internal, const GAndR& gr,
                             const Eigen::MatrixXd& K_dc,
                             const Eigen::MatrixXd& K_pc,
                             const Eigen::VectorXd& qc_err,
                             const Eigen::VectorXd& dqc_err) {
  const auto lu = coupling_lu(internal, gr);
  return lu.solve(internal.mu_c + internal.rho_c - internal.lambda_c * gr.R -
                  K_dc * dqc_err - K_pc * qc_err);
}

Eigen::VectorXd v_a_coupled(const Eigen::VectorXd& v_a,
                            const InternalTerms& internal, const GAndR& gr,
                            const Eigen::MatrixXd& K_dy,
                            const Eigen::MatrixXd& K_py,
                            const Eigen::VectorXd& y_err,
                            const Eigen::VectorXd& dy_err) {
  const auto lu = coupling_lu(internal, gr);
  return v_a + lu.solve(internal.lambda_c * (-K_dy * dy_err - K_py * y_err));
}

namespace {

struct GenericBreakdown {
  OutputTerms out;
  InternalTerms internal;
  GAndR gr;
  Eigen::VectorXd v_a, v_a_bar, N_c, N_y, u;
};

GenericBreakdown evaluate(const SystemTerms& terms, Mode mode,
                          const Eigen::MatrixXd& K_py, const Eigen::MatrixXd& K_dy,
                          const Eigen::MatrixXd& K_pc, const Eigen::MatrixXd& K_dc,
                          const Eigen::VectorXd& y_err, const Eigen::VectorXd& dy_err,
                          const Eigen::VectorXd& qc_err, const Eigen::VectorXd& dqc_err,
                          const Eigen::VectorXd& dq, int na) {
  GenericBreakdown b;
  b.out = output_terms(terms, dq);
  b.internal = internal_terms(terms, dq);
  b.gr = g_and_r(b.out, K_dy, K_py, y_err, dy_err, na);
  b.v_a = v_a_standard(b.internal, b.gr, K_dc, K_pc, qc_err, dqc_err);
  b.v_a_bar = b.v_a;
  if (mode == Mode::Coupled) {
    b.v_a_bar = v_a_coupled(b.v_a, b.internal, b.gr, K_dy, K_py, y_err, dy_err);
  }
  const Eigen::VectorXd& v = (mode == Mode::Coupled) ? b.v_a_bar : b.v_a;
  b.N_c = b.internal.lambda_c * (-K_dy * dy_err - K_py * y_err);
  b.N_y = b.gr.G * v;  // = Lambda_y [v; 0], the q3 channel carries no signal
  b.u = b.gr.G * v + b.gr.R;
  return b;
}

}  // namespace

std::pair<Wrench, ControlBreakdown> control_wrench_from_terms(
    const ControllerConfig& cfg, const dynamics::DynamicsTerms& terms,
    const JointState& measured) {
  if (!model::in_workspace(measured)) {
    throw ValidationError("measured state outside the validated workspace");
  }
  SystemTerms st;
  st.M = terms.M;
  st.C = terms.C;
  st.g = terms.g;
  st.Ju = terms.Ju;

  const Eigen::VectorXd y_err = measured.q.head<3>() - cfg.y_ref;
  const Eigen::VectorXd dy_err = measured.dq.head<3>() - cfg.dy_ref;
  const Eigen::VectorXd qc_err = measured.q.tail<2>() - cfg.qc_ref;
  const Eigen::VectorXd dqc_err = measured.dq.tail<2>() - cfg.dqc_ref;

  const GenericBreakdown b =
      evaluate(st, cfg.mode, cfg.K_py, cfg.K_dy, cfg.K_pc, cfg.K_dc, y_err,
               dy_err, qc_err, dqc_err, measured.dq, 2);

  ControlBreakdown out;
  out.Lambda_y = b.out.Lambda_y;
  out.mu_y = b.out.mu_y;
  out.rho_y = b.out.rho_y;
  out.mu_c = b.internal.mu_c;
  out.rho_c = b.internal.rho_c;
  out.lambda_c = b.internal.lambda_c;
  out.G = b.gr.G;
  out.R = b.gr.R;
  out.v_a = b.v_a;
  out.v_a_coupled = b.v_a_bar;
  out.N_c = b.N_c;
  out.N_y = b.N_y;
  out.u = b.u;
  out.cond_output_map = b.out.cond;
  return {out.u, out};
}

std::pair<Wrench, ControlBreakdown> control_wrench(const ControllerConfig& cfg,
                                                   const JointState& measured) {
  const dynamics::DynamicsTerms terms =
      dynamics::dynamics_terms(cfg.nominal, measured.q, measured.dq);
  return control_wrench_from_terms(cfg, terms, measured);
}

std::pair<double, PlanarBreakdown> planar_control_wrench_from_terms(
    const PlanarControllerConfig& cfg, const dynamics::PlanarTerms& terms,
    const PlanarState& measured) {
  if (!measured.q.allFinite() || !measured.dq.allFinite() ||
      !model::in_workspace_planar(measured.q)) {
    throw ValidationError("measured state outside the validated workspace");
  }
  SystemTerms st;
  st.M = terms.M;
  st.C = terms.C;
  st.g = terms.g;
  st.Ju = terms.Ju;

  using Scalar1 = Eigen::Matrix<double, 1, 1>;
  const auto scalar = [](double v) { return Scalar1::Constant(v); };

  const Eigen::VectorXd y_err = scalar(measured.q(0) - cfg.y_ref);
  const Eigen::VectorXd dy_err = scalar(measured.dq(0) - cfg.dy_ref);
  const Eigen::VectorXd qc_err = scalar(measured.q(1) - cfg.qc_ref);
  const Eigen::VectorXd dqc_err = scalar(measured.dq(1) - cfg.dqc_ref);

  const GenericBreakdown b =
      evaluate(st, cfg.mode, scalar(cfg.k_py), scalar(cfg.k_dy),
               scalar(cfg.k_pc), scalar(cfg.k_dc), y_err, dy_err, qc_err,
               dqc_err, measured.dq, 1);

  PlanarBreakdown out;
  out.Lambda_y = b.out.Lambda_y(0, 0);
  out.mu_y = b.out.mu_y(0);
  out.rho_y = b.out.rho_y(0);
  out.mu_c = b.internal.mu_c(0);
  out.rho_c = b.internal.rho_c(0);
  out.lambda_c = b.internal.lambda_c(0, 0);
  out.G = b.gr.G(0, 0);
  out.R = b.gr.R(0);
  out.v_a = b.v_a(0);
  out.v_a_coupled = b.v_a_bar(0);
  out.N_c = b.N_c(0);
  out.N_y = b.N_y(0);
  out.u = b.u(0);
  out.cond_output_map = b.out.cond;
  return {out.u, out};
}

std::pair<double, PlanarBreakdown> planar_control_wrench(
    const PlanarControllerConfig& cfg, const PlanarState& measured) {
  const dynamics::PlanarTerms terms =
      dynamics::planar_terms(cfg.nominal, measured.q, measured.dq);
  return planar_control_wrench_from_terms(cfg, terms, measured);
}

}  // namespace pendsim::control

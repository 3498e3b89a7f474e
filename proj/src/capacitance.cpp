#include "metascreen/capacitance.hpp"

#include <cmath>

namespace metascreen {

namespace {
const cplx kI{0.0, 1.0};

Eigen::Matrix2cd capacitance_from_solver(
    const MetascreenConfig& cfg, int N,
    const std::function<VectorXc(const VectorXc&)>& solve) {
  const BoundaryBasis basis{N};
  Eigen::Matrix2cd C;
  for (int j = 0; j < 2; ++j) {
    VectorXc chi = VectorXc::Zero(basis.dim());
    chi(basis.index(j, 0)) = 1.0;
    const VectorXc psi = solve(chi);
    for (int i = 0; i < 2; ++i)
      C(i, j) = -(disk_integral_row(cfg, i, N) * psi).value();
  }
  return C;
}

} // namespace

QuasiCapacitance capacitance_quasi(const MetascreenConfig& cfg, double alpha, int N) {
  if (alpha == 0.0)
    throw std::invalid_argument(
        "capacitance_quasi: alpha = 0 is the periodic case, use capacitance_periodic");
  const MatrixXc S = assemble_single_layer_quasi(
      cfg, QuasiMode::fixed(alpha, cplx{0.0, 0.0}, cfg.L), N);
  Eigen::PartialPivLU<MatrixXc> lu(S);
  if (lu.rcond() < 1e-12)
    throw NumericalError("capacitance_quasi: static quasiperiodic operator ill-conditioned");
  QuasiCapacitance out;
  out.C = capacitance_from_solver(cfg, N, [&](const VectorXc& rhs) { return lu.solve(rhs); });
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(0.5 * (out.C + out.C.adjoint()));
  out.lambda1 = es.eigenvalues()(0);
  out.lambda2 = es.eigenvalues()(1);
  return out;
}

VectorXc periodic_static_solve(const MetascreenConfig& cfg, const MatrixXc& S00,
                               const VectorXc& rhs, int N, double* lagrange) {
  const BoundaryBasis basis{N};
  const int dim = basis.dim();
  MatrixXc B = MatrixXc::Zero(dim + 1, dim + 1);
  B.topLeftCorner(dim, dim) = S00;
  VectorXc chi = VectorXc::Zero(dim);
  chi(basis.index(0, 0)) = 1.0;
  chi(basis.index(1, 0)) = 1.0;
  B.topRightCorner(dim, 1) = chi;
  B.bottomLeftCorner(1, dim) =
      disk_integral_row(cfg, 0, N) + disk_integral_row(cfg, 1, N);
  VectorXc full_rhs = VectorXc::Zero(dim + 1);
  full_rhs.head(dim) = rhs;
  Eigen::PartialPivLU<MatrixXc> lu(B);
  if (lu.rcond() < 1e-13)
    throw NumericalError("periodic static solve: bordered system ill-conditioned");
  const VectorXc sol = lu.solve(full_rhs);
  if (lagrange) *lagrange = std::abs(sol(dim));
  return sol.head(dim);
}

PeriodicCapacitance capacitance_periodic(const MetascreenConfig& cfg, int N) {
  const BoundaryBasis basis{N};
  const MatrixXc S00 = assemble_single_layer_periodic_static(cfg, N);

  PeriodicCapacitance out;
  out.C0.setZero();
  for (int j = 0; j < 2; ++j) {
    VectorXc rhs = VectorXc::Zero(basis.dim());
    rhs(basis.index(j, 0)) = 0.5;
    rhs(basis.index(1 - j, 0)) = -0.5;
    double lag = 0.0;
    const VectorXc psi = periodic_static_solve(cfg, S00, rhs, N, &lag);
    for (int i = 0; i < 2; ++i)
      out.C0(i, j) = -(disk_integral_row(cfg, i, N) * psi).value();
    if (j == 0) {
      out.psi1 = BoundaryDensity{psi, N};
      out.lagrange = lag;
    }
  }
  out.C11_0 = out.C0(0, 0).real();
  return out;
}

Vec2 dipole_vector(const MetascreenConfig& cfg, const PeriodicCapacitance& pc) {
  const int N = pc.psi1.N;
  const cplx cx = (moment_row_x(cfg, N) * pc.psi1.coefficients).value();
  const cplx cy = (moment_row_y(cfg, N) * pc.psi1.coefficients).value();
  return Vec2{cx.real(), cy.real()};
}

Vec2 dipole_vector(const MetascreenConfig& cfg, int N) {
  return dipole_vector(cfg, capacitance_periodic(cfg, N));
}

Eigen::Matrix2cd c1_matrix(const MetascreenConfig& cfg, const Incidence& inc,
                           const Vec2& dipole) {
  const double w = inc.w_perp();
  const double L = cfg.L;
  const double cpar = dipole.x();
  const double cperp = dipole.y();
  Eigen::Matrix2cd ones, rot, diff;
  ones << 1, 1, 1, 1;
  rot << 0, 1, -1, 0;
  diff << 1, -1, -1, 1;
  return -kI * w * L / 2.0 * ones + kI * inc.alpha0 * cpar * rot -
         kI * w * cperp * cperp / (2.0 * L) * diff;
}

Eigen::Matrix2cd c1_matrix_numeric(const MetascreenConfig& cfg, const Incidence& inc,
                                   double omega_fd, int N) {
  if (omega_fd < 1e-3 || omega_fd > 1e-1)
    throw std::invalid_argument("c1_matrix_numeric: omega_fd outside [1e-3, 1e-1]");
  auto capacitance_at = [&](double omega) {
    const MatrixXc S = assemble_single_layer_quasi(
        cfg, QuasiMode::slaved(inc.alpha0, cplx{omega, 0.0}, cfg.L), N);
    Eigen::PartialPivLU<MatrixXc> lu(S);
    if (lu.rcond() < 1e-13)
      throw NumericalError("c1_matrix_numeric: quasiperiodic operator ill-conditioned");
    return capacitance_from_solver(cfg, N,
                                   [&](const VectorXc& rhs) { return lu.solve(rhs); });
  };
  const Eigen::Matrix2cd plus = capacitance_at(omega_fd);
  const Eigen::Matrix2cd minus = capacitance_at(-omega_fd);
  return (plus - minus) / (2.0 * omega_fd);
}

CapacitanceData capacitance_bundle(const MetascreenConfig& cfg, const Incidence& inc,
                                   int N) {
  const PeriodicCapacitance pc = capacitance_periodic(cfg, N);
  CapacitanceData data;
  data.C11_0 = pc.C11_0;
  data.dipole = dipole_vector(cfg, pc);
  data.C1 = c1_matrix(cfg, inc, data.dipole);
  data.N = N;
  return data;
}

} // namespace metascreen

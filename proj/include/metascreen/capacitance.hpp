#pragma once

#include "metascreen/layer_ops.hpp"

// Capacitance coefficients of the dimer metascreen: the quasiperiodic matrix
// C^alpha, the periodic scalar C11^0 with its density psi_1^0, the dipole
// vector (c_par, c_perp), and the first-order matrix C^{1,alpha0} in both its
// closed form and a finite-difference validation.

namespace metascreen {

struct QuasiCapacitance {
  Eigen::Matrix2cd C;
  double lambda1 = 0.0; // eigenvalues, lambda1 <= lambda2
  double lambda2 = 0.0;
};

// C^alpha at k = 0 for alpha != 0: C_ij = -int_{dD_i} (S^{alpha,0})^{-1}[chi_j].
QuasiCapacitance capacitance_quasi(const MetascreenConfig& cfg, double alpha, int N);

struct PeriodicCapacitance {
  double C11_0 = 0.0;
  Eigen::Matrix2cd C0;       // full matrix, C11_0 * [[1,-1],[-1,1]] structurally
  BoundaryDensity psi1;      // solves S^{0,0}[psi1] = (chi_1 - chi_2)/2, mean zero
  double lagrange = 0.0;     // magnitude of the bordered-system multiplier
};

// Mean-zero bordered solve of S^{0,0}[psi] + K chi = rhs, int psi = 0. The
// kernel of S^{0,0} has dimension at most one and the operator is injective on
// the mean-zero subspace, so the bordered system is uniquely solvable.
VectorXc periodic_static_solve(const MetascreenConfig& cfg, const MatrixXc& S00,
                               const VectorXc& rhs, int N, double* lagrange = nullptr);

PeriodicCapacitance capacitance_periodic(const MetascreenConfig& cfg, int N);

// First moment of psi_1^0 over both boundaries: (c_par, c_perp).
Vec2 dipole_vector(const MetascreenConfig& cfg, int N);
Vec2 dipole_vector(const MetascreenConfig& cfg, const PeriodicCapacitance& pc);

// Closed form of Lemma-type first-order matrix:
//   C^{1,alpha0} = -(i w L / 2) [[1,1],[1,1]] + i alpha0 c_par [[0,1],[-1,0]]
//                  - (i w c_perp^2 / (2 L)) [[1,-1],[-1,1]].
Eigen::Matrix2cd c1_matrix(const MetascreenConfig& cfg, const Incidence& inc,
                           const Vec2& dipole);

// Central finite difference of M(omega)_ij = -int_i (S^{omega a0, omega})^{-1}[chi_j]
// at +-omega_fd; M(omega) = C^0 + omega C^{1,alpha0} + O(omega^2).
Eigen::Matrix2cd c1_matrix_numeric(const MetascreenConfig& cfg, const Incidence& inc,
                                   double omega_fd, int N);

// Everything the asymptotic formulas need, computed once per configuration.
struct CapacitanceData {
  double C11_0 = 0.0;
  Vec2 dipole = Vec2::Zero();
  Eigen::Matrix2cd C1;
  int N = 0;
};

CapacitanceData capacitance_bundle(const MetascreenConfig& cfg, const Incidence& inc,
                                   int N);

} // namespace metascreen

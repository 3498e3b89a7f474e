#pragma once

#include "metascreen/layer_ops.hpp"
#include "metascreen/scattering.hpp"

// High-resolution Nystrom discretization of the same boundary operators in a
// point-collocation basis, with Kress/Martensen splitting of the logarithmic
// singularity. Used only as an independent oracle in tests; production paths
// never call into this header.

namespace metascreen::oracle {

// Point basis: M nodes per circle at t_j = 2 pi j / M, disk 1 then disk 2.
// Guard: M > 4096 is refused (dense 2M x 2M complex storage).
MatrixXc single_layer_free(const MetascreenConfig& cfg, cplx k, int M);
MatrixXc neumann_poincare_free(const MetascreenConfig& cfg, cplx k, int M);
MatrixXc single_layer_quasi(const MetascreenConfig& cfg, const QuasiMode& mode,
                            int M, double ewald_E = 0.0);
MatrixXc neumann_poincare_quasi(const MetascreenConfig& cfg, const QuasiMode& mode,
                                int M, double ewald_E = 0.0);
MatrixXc single_layer_periodic_static(const MetascreenConfig& cfg, int M);

// Quadrature weight of one node (uniform trapezoid on the circle).
double node_weight(const MetascreenConfig& cfg, int M);

// Periodic capacitance and dipole through the mean-zero bordered solve.
struct PeriodicOracle {
  double C11_0 = 0.0;
  Vec2 dipole = Vec2::Zero();
  VectorXc psi1; // point values
};
PeriodicOracle capacitance_periodic(const MetascreenConfig& cfg, int M);

Eigen::Matrix2cd capacitance_quasi(const MetascreenConfig& cfg, double alpha, int M);

// Full scattering solve in the point basis.
ScatteringResult solve_scattering(const MetascreenConfig& cfg, const Incidence& inc,
                                  double delta, double omega, int M);

// Potential of a point-basis density at an off-surface point.
cplx eval_single_layer_quasi(const MetascreenConfig& cfg, const QuasiMode& mode,
                             const VectorXc& density, const Vec2& x,
                             double ewald_E = 0.0);

} // namespace metascreen::oracle

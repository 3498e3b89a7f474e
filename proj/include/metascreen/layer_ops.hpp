#pragma once

#include <Eigen/Dense>
#include <iosfwd>

#include "metascreen/geometry.hpp"
#include "metascreen/lattice_green.hpp"

// Multipole (per-disk Fourier) discretization of the single layer potentials
// and Neumann-Poincare operators on the dimer boundary, and assembly of the
// boundary-integral operator of the scattering problem together with its
// right-hand side.
//
// Basis convention: coefficient vectors have length 2*(2N+1), ordered disk 1
// modes -N..N then disk 2 modes -N..N, where mode n is e^{i n t} on the circle
// parametrized by t in [0, 2pi). The integral of a density over one disk
// boundary is 2 pi R_D times its mode-0 coefficient. Self-disk blocks of the
// singular kernels are exact (analytic diagonalization); everything smooth is
// integrated by tensor-product trapezoid quadrature at 4N+16 nodes per circle,
// which is spectrally accurate for these periodic integrands.

namespace metascreen {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;
using RowVectorXc = Eigen::RowVectorXcd;

struct BoundaryBasis {
  int N = 6;
  int modes() const { return 2 * N + 1; }
  int dim() const { return 2 * modes(); }
  // disk j in {0, 1}, mode n in [-N, N]
  int index(int j, int n) const { return j * modes() + (n + N); }
};

// Density in the dimer Fourier basis.
struct BoundaryDensity {
  VectorXc coefficients;
  int N = 0;
};

enum class OperatorKind { S_quasi, S_free, K_quasi, K_free, A_omega };

struct OperatorMatrix {
  MatrixXc entries;
  BoundaryBasis basis;
  OperatorKind kind;
  cplx k{};     // wavenumber (omega/v_b for the free factors, omega otherwise)
  cplx alpha{}; // quasimomentum of record, 0 for free-space kinds
  double delta = 0.0;
};

// Free-space single layer S_D^k; k = 0 gives the static (log-kernel) operator.
MatrixXc assemble_single_layer_free(const MetascreenConfig& cfg, cplx k, int N);

// Free-space Neumann-Poincare adjoint (K_D^k)^*.
MatrixXc assemble_neumann_poincare_free(const MetascreenConfig& cfg, cplx k, int N);

// Quasiperiodic single layer S_D^{alpha,k}; kernel split into the central
// free-space image plus the smooth lattice remainder.
MatrixXc assemble_single_layer_quasi(const MetascreenConfig& cfg,
                                     const QuasiMode& mode, int N,
                                     double ewald_E = 0.0);

// Both quasiperiodic operators from one pass over the lattice remainder.
struct QuasiOperatorPair {
  MatrixXc S;
  MatrixXc K;
};
QuasiOperatorPair assemble_quasi_operator_pair(const MetascreenConfig& cfg,
                                               const QuasiMode& mode, int N,
                                               double ewald_E = 0.0);

// Quasiperiodic Neumann-Poincare adjoint (K_D^{-alpha,k})^*; the kernel is
// d/dnu_x G^{alpha,k}(x-y), matching the jump relation of S_D^{alpha,k}.
MatrixXc assemble_neumann_poincare_quasi(const MetascreenConfig& cfg,
                                         const QuasiMode& mode, int N,
                                         double ewald_E = 0.0);

// Periodic static single layer S_D^{0,0} through the closed-form kernel.
MatrixXc assemble_single_layer_periodic_static(const MetascreenConfig& cfg, int N);

// Interior Dirichlet-to-Neumann factor (-1/2 I + (K^k)^*) (S^k)^{-1}.
MatrixXc dtn_interior(const MetascreenConfig& cfg, cplx k, int N);

// Boundary operator of the transmission problem,
//   A^omega = (-1/2 I + (K^{omega/v_b})^*)(S^{omega/v_b})^{-1}
//             - delta (1/2 I + (K^{-alpha,omega})^*)(S^{alpha,omega})^{-1},
// with alpha either slaved (alpha = omega alpha0) or fixed (band structure).
struct AlphaSpec {
  bool slaved = true;
  double alpha0 = 0.0;      // used when slaved
  double alpha_fixed = 0.0; // used when !slaved

  static AlphaSpec incidence(const Incidence& inc) { return {true, inc.alpha0, 0.0}; }
  static AlphaSpec fixed(double alpha) { return {false, 0.0, alpha}; }
  QuasiMode mode(cplx omega, double L) const {
    return slaved ? QuasiMode::slaved(alpha0, omega, L)
                  : QuasiMode::fixed(alpha_fixed, omega, L);
  }
};

OperatorMatrix assemble_A(const MetascreenConfig& cfg, const AlphaSpec& aspec,
                          double delta, cplx omega, int N);

// Right-hand side F[u^in] for the incident plane wave exp(i omega w . x).
BoundaryDensity assemble_rhs(const MetascreenConfig& cfg, const Incidence& inc,
                             double delta, cplx omega, int N);

// --- analytic boundary functionals ------------------------------------------

// Fourier coefficients of exp(i k . x) restricted to each circle (Jacobi-Anger,
// truncated at N); rho = |k|, phase = (k1 + i k2)/rho.
VectorXc plane_wave_trace(const MetascreenConfig& cfg, cplx rho, cplx phase, int N);
VectorXc plane_wave_normal_derivative(const MetascreenConfig& cfg, cplx rho,
                                      cplx phase, int N);

// Row functional: integral of a density over the boundary of disk j (0 or 1).
RowVectorXc disk_integral_row(const MetascreenConfig& cfg, int j, int N);

// Row functional: integral of exp(-i k . y) times a density over both disks.
RowVectorXc radiation_row(const MetascreenConfig& cfg, cplx rho, cplx phase, int N);

// Row functionals for the first moments (y1, y2 components).
RowVectorXc moment_row_x(const MetascreenConfig& cfg, int N);
RowVectorXc moment_row_y(const MetascreenConfig& cfg, int N);

// --- off-surface evaluation (tests and diagnostics) -------------------------

cplx eval_single_layer_free(const MetascreenConfig& cfg, cplx k,
                            const VectorXc& coef, const Vec2& x);
Vec2c eval_single_layer_free_grad(const MetascreenConfig& cfg, cplx k,
                                  const VectorXc& coef, const Vec2& x);
cplx eval_single_layer_quasi(const MetascreenConfig& cfg, const QuasiMode& mode,
                             const VectorXc& coef, const Vec2& x,
                             double ewald_E = 0.0);
Vec2c eval_single_layer_quasi_grad(const MetascreenConfig& cfg,
                                   const QuasiMode& mode, const VectorXc& coef,
                                   const Vec2& x, double ewald_E = 0.0);

// Largest entry change of the shared sub-block between truncation N and N + 4.
double quasi_refinement_gap(const MetascreenConfig& cfg, const QuasiMode& mode,
                            int N, double ewald_E = 0.0);

// (row, col, re, im) CSV serialization for golden fixtures.
void write_matrix_csv(std::ostream& os, const MatrixXc& m);
MatrixXc read_matrix_csv(std::istream& is);

int quadrature_nodes(int N);

} // namespace metascreen

#pragma once

#include <string>
#include <vector>

#include "metascreen/resonance.hpp"

// Driven scattering through the metascreen: the full boundary-integral solve
// for (r, t), the closed-form asymptotic scattering matrix, spectrum sweeps
// with automatic refinement of the sharp Fano feature, and the checks that the
// symmetric structure carries a bound state in the continuum.

namespace metascreen {

enum class ScatteringMethod { numeric, asymptotic };

struct ScatteringResult {
  double omega = 0.0;
  cplx r{};
  cplx t{};
  double T = 0.0;
  double R = 0.0;
  ScatteringMethod method = ScatteringMethod::numeric;
  double residual = 0.0;
};

// Solve A^omega[eta] = F[u^in], recover psi = (S^{alpha,omega})^{-1}[eta], and
// read off the up/down amplitudes through the radiating-mode quadrature.
ScatteringResult solve_scattering(const MetascreenConfig& cfg, const Incidence& inc,
                                  double delta, double omega, int N);

// Asymptotic scattering matrix
//   S = omega1/(omega1-omega) [[1,1],[1,1]]
//       + 2 i omega Im(omega2)/(omega2^2-omega^2) [[1,-1],[-1,1]] - I;
// rejects the symmetric (c_perp = 0) configuration, whose sharp resonance is a
// bound state in the continuum.
ScatteringResult smatrix_asymptotic(const MetascreenConfig& cfg, const Incidence& inc,
                                    double delta, double omega,
                                    const ResonancePair& rp, const Vec2& dipole);

// First and third terms only (the broad resonance); what the spectrum reduces
// to when the sharp state decouples.
ScatteringResult smatrix_one_resonance(const ResonancePair& rp, double omega);

struct SpectrumRow {
  double omega = 0.0;
  double T_num = 0.0, R_num = 0.0;
  double T_asym = 0.0, R_asym = 0.0;
  cplx t{}, r{};
  double residual = 0.0;
  bool ok = false;
  std::string error;
};

struct SpectrumOptions {
  int N = 6;
  bool parallel = true;
  bool refine_sharp_feature = true; // insert fine windows around Re(omega2)
  bool refine_spikes = true;        // one extra pass where |dT| jumps
};

// Transmission/reflection over a frequency grid. Refinement points are derived
// from the Muller-corrected sharp resonance, so reruns are deterministic and
// independent of the parallelism degree.
std::vector<SpectrumRow> spectrum_sweep(const MetascreenConfig& cfg,
                                        const Incidence& inc, double delta,
                                        const std::vector<double>& omega_grid,
                                        const SpectrumOptions& opts);

// Far-field amplitude of the minimal-singular-vector eigenmode of A^omega,
// normalized by the mode's boundary L2 norm; near zero only for a bound state
// in the continuum.
double eigenmode_farfield_amplitude(const MetascreenConfig& cfg, const Incidence& inc,
                                    double delta, cplx omega, int N);

struct BicReport {
  cplx omega2{};
  double im_omega2 = 0.0;
  bool realness_ok = false;         // |Im omega2| < 1e-8
  double farfield_amplitude = 0.0;
  bool nonradiation_ok = false;     // normalized far field < 1e-6
  double spectral_deviation = 0.0;  // max |T_num - T_one-resonance| near Re omega2
  double spectral_tolerance = 0.0;  // 5 sqrt(delta)
  bool nonexcitation_ok = false;
  double parity_residual = 0.0;     // eigenmode odd under the in-plane flip
  bool parity_ok = false;

  bool pass() const { return realness_ok && nonradiation_ok && nonexcitation_ok; }
};

// The three bound-state checks at theta = 0, alpha0 = 0: the sharp root is
// real, its eigenmode does not radiate, and the spectrum shows no sharp
// feature near it.
BicReport bic_check(const MetascreenConfig& cfg, double delta, int N);

struct QSolution {
  Eigen::Vector2cd q; // capacitance-problem amplitudes
  Eigen::Vector2cd p; // p_i = int_{dD_i} (S^{alpha,omega})^{-1}[u^in]
};

// Reduced 2x2 problem (C^0 + omega C^{1,alpha0} - omega^2 |D1|/(delta v_b^2) I) q = -p
// with p from the numeric quadrature; reconciles numeric and asymptotic spectra.
QSolution solve_q(const MetascreenConfig& cfg, const Incidence& inc, double delta,
                  double omega, int N);

} // namespace metascreen

#pragma once

#include <functional>
#include <vector>

#include "metascreen/capacitance.hpp"

// Subwavelength resonant frequencies: leading-order closed forms from the
// capacitance matrices, numerical characteristic values of A^omega by Muller
// iteration on the smallest singular value, Brillouin-zone band sweeps, and
// the argument-principle root count.

namespace metascreen {

enum class ResonanceMethod { asymptotic, muller };

struct ResonancePair {
  cplx omega1{}; // broad, monopole-type
  cplx omega2{}; // sharp, dipole-type
  ResonanceMethod method = ResonanceMethod::asymptotic;
  double delta = 0.0;
  double alpha0 = 0.0;
};

// Fixed-alpha band asymptotics: omega_i = v_b sqrt(delta lambda_i^alpha / |D1|).
std::pair<double, double> band_asymptotic(const MetascreenConfig& cfg, double delta,
                                          double alpha, int N);

// Slaved-incidence asymptotics near the origin:
//   omega1 = -i delta v_b^2 w L / |D1|,
//   omega2 = sqrt(2 delta v_b^2 C11^0 / |D1|) - i delta v_b^2 w c_perp^2 / (2 |D1| L).
ResonancePair res0_asymptotic(const MetascreenConfig& cfg, const Incidence& inc,
                              double delta, const CapacitanceData& data);
ResonancePair res0_asymptotic(const MetascreenConfig& cfg, const Incidence& inc,
                              double delta, int N);

// Natural frequency scale of the sharp resonance; the subwavelength window
// and the root-count contour are measured in multiples of it.
double subwavelength_scale(const MetascreenConfig& cfg, double delta, double C11_0);

struct MullerOptions {
  double tol_dz = 1e-10;       // step tolerance (relative to max(1, |omega|))
  double residual_tol = 1e-8;  // require sigma_min < residual_tol * sigma_max
  int max_iter = 50;
  double window_radius = 0.0;  // 0 disables the escape check
};

struct MullerResult {
  cplx omega{};
  int iterations = 0;
  double residual = 0.0; // sigma_min / sigma_max at the root
  bool converged = false;
  bool in_window = true;
};

// Muller iteration on f(omega) = sigma_min(A^omega), seeded at `guess`.
MullerResult resonance_muller(const MetascreenConfig& cfg, const AlphaSpec& aspec,
                              double delta, cplx guess, int N,
                              const MullerOptions& opts = {});

// Generic three-point Muller step engine (exposed for tests).
MullerResult muller_iterate(const std::function<cplx(cplx)>& f, cplx z0, cplx z1,
                            cplx z2, const MullerOptions& opts);

struct BandPoint {
  double alpha = 0.0;
  cplx omega1{};
  cplx omega2{};
  Regime regime1 = Regime::subcritical;
  Regime regime2 = Regime::subcritical;
  double continuum_boundary = 0.0; // omega = |alpha|
  bool ok = false;
  std::string error;
};

// Muller roots over an alpha grid, seeded by the band asymptotics; per-point
// failures are recorded and the sweep continues.
std::vector<BandPoint> band_sweep(const MetascreenConfig& cfg, double delta,
                                  const std::vector<double>& alpha_grid, int N,
                                  bool parallel = true);

// log det A^omega (principal value per factor; only phase differences along a
// contour are meaningful).
cplx log_det_A(const MetascreenConfig& cfg, const AlphaSpec& aspec, double delta,
               cplx omega, int N);

struct WindingResult {
  int winding = 0;
  double raw = 0.0;    // total phase change / 2 pi before rounding
  int evaluations = 0;
};

// Argument-principle count of characteristic values inside the boundary of the
// lower half-disk of radius `radius`, indented below omega = 0 by
// `indent_radius` (the static branch point stays outside the contour).
WindingResult winding_number(const MetascreenConfig& cfg, const AlphaSpec& aspec,
                             double delta, double radius, double indent_radius,
                             int N);

} // namespace metascreen

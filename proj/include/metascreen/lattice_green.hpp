#pragma once

#include <complex>
#include <optional>
#include <stdexcept>

#include "metascreen/geometry.hpp"

// Green's functions of the 2D Helmholtz/Laplace equations for a 1D lattice of
// period L along the x1 axis: free space, quasiperiodic (spatial/Ewald and
// spectral representations) and the periodic static closed form. The branch of
// gamma_q = sqrt(k^2 - (alpha+q)^2) is Im gamma_q >= 0 off the propagating
// strip and the analytic continuation of the outgoing branch (Re gamma_q > 0)
// on it, so that the q = 0 mode radiates and all others decay.

namespace metascreen {

using cplx = std::complex<double>;
using Vec2c = Eigen::Vector2cd;

struct WoodAnomalyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameters of one quasiperiodic evaluation. In the slaved regime the pair
// (alpha, k) = (omega alpha0, omega) moves together and the q = 0 mode uses
// gamma_0 = omega * w_perp exactly, which is the analytic continuation through
// omega = 0 (needed for finite differences at negative omega and for complex
// omega during root finding).
struct QuasiMode {
  cplx alpha{0.0, 0.0};
  cplx k{0.0, 0.0};
  double L = 1.0;
  std::optional<double> slaved_alpha0; // set when alpha = k * alpha0

  static QuasiMode fixed(double alpha, cplx k, double L) {
    return QuasiMode{cplx{alpha, 0.0}, k, L, std::nullopt};
  }
  static QuasiMode slaved(double alpha0, cplx omega, double L) {
    return QuasiMode{omega * alpha0, omega, L, alpha0};
  }
};

enum class Regime { subcritical, first_continuum, higher };

struct RegimeInfo {
  Regime regime;
  bool near_boundary = false; // within 1e-10 of a regime threshold
};

RegimeInfo regime_classify(double alpha, double k, double L);

enum class Representation { spatial, spectral, ewald, closed_form_static };

struct GreenEval {
  cplx value{};
  std::optional<Vec2c> gradient;
  Representation representation = Representation::ewald;
  bool slow_convergence = false; // |x2| too small for the spectral series
  bool ewald_param_unstable = false;
};

// gamma_q for lattice mode q = 2*pi*n/L; throws WoodAnomalyError within the
// guard band of a branch collision.
cplx lattice_gamma(const QuasiMode& mode, int n);

// Outgoing free-space kernel -(i/4) H0^(1)(k|x|); (1/2pi) ln|x| for k = 0.
cplx greens_free(const Vec2& x, cplx k);
Vec2c greens_free_grad(const Vec2& x, cplx k);

// Mode sum over q; requires |x2| > 0. Exponentially convergent for |x2| > 0,
// slow below L/10 (flagged).
GreenEval greens_quasi_spectral(const Vec2& x, const QuasiMode& mode, int Q,
                                bool want_gradient = false);

// Ewald split with smoothing parameter E; usable on-surface (x off the source
// lattice). Stable for E in roughly [2/L, 8/L].
GreenEval greens_quasi_ewald(const Vec2& x, const QuasiMode& mode, double E,
                             bool want_gradient = false);

// Periodic static Green's function, closed form
//   G^{0,0}(x) = (1/4pi) ln(4 (sinh^2(pi x2/L) + sin^2(pi x1/L))),
// whose additive constant matches the spectral series term by term.
GreenEval greens_periodic_static(const Vec2& x, double L,
                                 bool want_gradient = false);

// Smooth remainder G^{alpha,k}(x) - G^k(x): the central image removed, with
// the exact limits at x = 0. This is what operator assembly integrates.
struct QuasiRemainder {
  cplx value{};
  Vec2c gradient{};
};
QuasiRemainder quasi_remainder(const Vec2& x, const QuasiMode& mode, double E);

// Same for the periodic static kernel: G^{0,0}(x) - (1/2pi) ln|x|.
QuasiRemainder periodic_static_remainder(const Vec2& x, double L);

double default_ewald_parameter(double L);

} // namespace metascreen

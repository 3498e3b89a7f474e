#include "metascreen/lattice_green.hpp"

#include <cmath>

#include "metascreen/special_functions.hpp"

namespace metascreen {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kEulerGamma = 0.57721566490153286060651209008;
const cplx kI{0.0, 1.0};

// e^{expo} * erfc(u), evaluated through the scaled Faddeeva function so that
// the intermediate exponentials stay bounded (the combined exponent
// expo - u^2 is <= 0 in every Ewald term).
cplx scaled_erfc_term(cplx expo, cplx u) {
  if (u.real() >= 0.0)
    return std::exp(expo - u * u) * sf::faddeeva_w(kI * u);
  return 2.0 * std::exp(expo) - std::exp(expo - u * u) * sf::faddeeva_w(-kI * u);
}

int spatial_series_terms(cplx k, double E) {
  const double rho = std::abs(k) / (2.0 * E);
  double term = 1.0;
  for (int n = 1; n <= 64; ++n) {
    term *= rho * rho / n;
    if (term < 1e-20) return n;
  }
  return 64;
}

struct SpatialSums {
  cplx value{};    // sum over requested images of -(1/4pi) ph_m sum_n c_n E_{n+1}
  Vec2c gradient{};
};

// Gaussian-windowed image sum; skip_center drops the m = 0 image (its singular
// contribution is handled analytically by the caller).
SpatialSums ewald_spatial(const Vec2& x, const QuasiMode& mode, double E,
                          bool skip_center, bool want_gradient) {
  SpatialSums out;
  const double L = mode.L;
  const int nK = spatial_series_terms(mode.k, E);
  std::vector<cplx> cn(static_cast<size_t>(nK));
  cn[0] = 1.0;
  const cplx ratio = mode.k / (2.0 * E) * (mode.k / (2.0 * E));
  for (int n = 1; n < nK; ++n) cn[static_cast<size_t>(n)] = cn[static_cast<size_t>(n - 1)] * ratio / static_cast<double>(n);

  const int m_center = static_cast<int>(std::lround(x.x() / L));
  const int reach = static_cast<int>(std::ceil(6.6 / (E * L))) + 2;

  auto add_image = [&](int m) -> double {
    if (skip_center && m == 0) return 0.0;
    const Vec2 rvec{x.x() - m * L, x.y()};
    const double r2 = rvec.squaredNorm();
    if (r2 < 1e-24) throw SingularPointError("ewald: point on the source lattice");
    const auto En = sf::expint_sequence(nK, E * E * r2);
    cplx inner = 0.0;
    for (int n = 0; n < nK; ++n) inner += cn[static_cast<size_t>(n)] * En[static_cast<size_t>(n)];
    const cplx ph = std::exp(kI * mode.alpha * static_cast<double>(m) * L);
    const cplx val = -(1.0 / (4.0 * kPi)) * ph * inner;
    out.value += val;
    if (want_gradient) {
      cplx ginner = std::exp(-E * E * r2) / (E * E * r2); // E_0
      for (int n = 1; n < nK; ++n) ginner += cn[static_cast<size_t>(n)] * En[static_cast<size_t>(n - 1)];
      const cplx g = (E * E / (2.0 * kPi)) * ph * ginner;
      out.gradient += Vec2c{g * rvec.x(), g * rvec.y()};
    }
    return std::abs(val);
  };

  for (int m = m_center - reach; m <= m_center + reach; ++m) add_image(m);
  // extend adaptively; complex alpha can tilt the image phases
  const double floor_mag = 1e-18 * (std::abs(out.value) + 1e-300);
  for (int m = m_center + reach + 1; m <= m_center + reach + 40; ++m)
    if (add_image(m) < floor_mag) break;
  for (int m = m_center - reach - 1; m >= m_center - reach - 40; --m)
    if (add_image(m) < floor_mag) break;
  return out;
}

struct SpectralSums {
  cplx value{};
  Vec2c gradient{};
};

SpectralSums ewald_spectral(const Vec2& x, const QuasiMode& mode, double E,
                            bool want_gradient) {
  SpectralSums out;
  const double L = mode.L;
  const double x2E = x.y() * E;
  const double two_over_sqrtpi = 2.0 / std::sqrt(kPi);

  auto add_mode = [&](int n) -> double {
    const cplx a = mode.alpha + 2.0 * kPi * n / L;
    const cplx gamma = lattice_gamma(mode, n);
    const cplx beta = -kI * gamma;
    const cplx b = beta / (2.0 * E);
    const cplx um = b - x2E;
    const cplx up = b + x2E;
    const cplx t1 = scaled_erfc_term(-beta * x.y(), um);
    const cplx t2 = scaled_erfc_term(beta * x.y(), up);
    const cplx pref = -std::exp(kI * a * x.x()) / (4.0 * L * beta);
    const cplx val = pref * (t1 + t2);
    out.value += val;
    if (want_gradient) {
      const cplx g1 = -beta * t1 + two_over_sqrtpi * E * std::exp(-beta * x.y() - um * um);
      const cplx g2 = beta * t2 - two_over_sqrtpi * E * std::exp(beta * x.y() - up * up);
      out.gradient += Vec2c{kI * a * val, pref * (g1 + g2)};
    }
    return std::abs(val);
  };

  add_mode(0);
  const int base = static_cast<int>(std::ceil(
                       (13.0 * E + std::abs(mode.alpha)) * L / (2.0 * kPi))) + 2;
  for (int n = 1; n <= base; ++n) {
    add_mode(n);
    add_mode(-n);
  }
  const double floor_mag = 1e-18 * (std::abs(out.value) + 1e-300);
  for (int n = base + 1; n <= base + 400; ++n) {
    const double t = add_mode(n) + add_mode(-n);
    if (t < floor_mag) break;
  }
  return out;
}

} // namespace

RegimeInfo regime_classify(double alpha, double k, double L) {
  const double a = std::abs(Quasimomentum::reduced(alpha, L).alpha);
  const double next = 2.0 * kPi / L - a; // nearest nonzero-mode threshold
  RegimeInfo info{Regime::higher, false};
  if (k < a) info.regime = Regime::subcritical;
  else if (k < next) info.regime = Regime::first_continuum;
  if (std::abs(k - a) < 1e-10 || std::abs(k - next) < 1e-10) info.near_boundary = true;
  return info;
}

cplx lattice_gamma(const QuasiMode& mode, int n) {
  if (mode.slaved_alpha0 && n == 0) {
    const double a0 = *mode.slaved_alpha0;
    return mode.k * std::sqrt(1.0 - a0 * a0);
  }
  const cplx a = mode.alpha + 2.0 * kPi * n / mode.L;
  const cplx d = mode.k * mode.k - a * a;
  if (std::abs(d) < 1e-12 * (std::abs(mode.k) + std::abs(a)))
    throw WoodAnomalyError("branch collision: k too close to |alpha + q|");
  if (d.real() >= 0.0) return std::sqrt(d);
  return kI * std::sqrt(-d);
}

cplx greens_free(const Vec2& x, cplx k) {
  const double r = x.norm();
  if (r < 1e-14) throw SingularPointError("greens_free: x = 0");
  if (k == cplx{0.0, 0.0}) return std::log(r) / (2.0 * kPi);
  return -0.25 * kI * sf::hankel1(0, k * r);
}

Vec2c greens_free_grad(const Vec2& x, cplx k) {
  const double r = x.norm();
  if (r < 1e-14) throw SingularPointError("greens_free_grad: x = 0");
  if (k == cplx{0.0, 0.0}) {
    const double c = 1.0 / (2.0 * kPi * r * r);
    return Vec2c{c * x.x(), c * x.y()};
  }
  const cplx c = 0.25 * kI * k * sf::hankel1(1, k * r) / r;
  return Vec2c{c * x.x(), c * x.y()};
}

GreenEval greens_quasi_spectral(const Vec2& x, const QuasiMode& mode, int Q,
                                bool want_gradient) {
  if (std::abs(x.y()) <= 0.0)
    throw SingularPointError("spectral representation requires |x2| > 0");
  GreenEval out;
  out.representation = Representation::spectral;
  out.slow_convergence = std::abs(x.y()) < mode.L / 10.0;
  const double sgn = x.y() > 0.0 ? 1.0 : -1.0;
  cplx val = 0.0;
  Vec2c grad = Vec2c::Zero();
  for (int n = -Q; n <= Q; ++n) {
    const cplx a = mode.alpha + 2.0 * kPi * n / mode.L;
    const cplx gamma = lattice_gamma(mode, n);
    const cplx term = std::exp(kI * a * x.x()) * std::exp(kI * gamma * std::abs(x.y())) /
                      (2.0 * kI * mode.L * gamma);
    val += term;
    if (want_gradient) grad += Vec2c{kI * a * term, kI * gamma * sgn * term};
  }
  out.value = val;
  if (want_gradient) out.gradient = grad;
  return out;
}

GreenEval greens_quasi_ewald(const Vec2& x, const QuasiMode& mode, double E,
                             bool want_gradient) {
  GreenEval out;
  out.representation = Representation::ewald;
  out.ewald_param_unstable = (E < 1.5 / mode.L || E > 10.0 / mode.L);
  const auto spec = ewald_spectral(x, mode, E, want_gradient);
  const auto spat = ewald_spatial(x, mode, E, /*skip_center=*/false, want_gradient);
  out.value = spec.value + spat.value;
  if (want_gradient) out.gradient = spec.gradient + spat.gradient;
  return out;
}

GreenEval greens_periodic_static(const Vec2& x, double L, bool want_gradient) {
  const double u = kPi * x.y() / L;
  const double v = kPi * x.x() / L;
  const double s = std::sinh(u) * std::sinh(u) + std::sin(v) * std::sin(v);
  if (s < 1e-280) throw SingularPointError("periodic static kernel: x on the lattice");
  GreenEval out;
  out.representation = Representation::closed_form_static;
  out.value = std::log(4.0 * s) / (4.0 * kPi);
  if (want_gradient)
    out.gradient = Vec2c{std::sin(2.0 * v) / (4.0 * L * s),
                         std::sinh(2.0 * u) / (4.0 * L * s)};
  return out;
}

QuasiRemainder quasi_remainder(const Vec2& x, const QuasiMode& mode, double E) {
  const auto spec = ewald_spectral(x, mode, E, true);
  const auto far = ewald_spatial(x, mode, E, /*skip_center=*/true, true);
  QuasiRemainder out;
  out.value = spec.value + far.value;
  out.gradient = spec.gradient + far.gradient;

  const double r2 = x.squaredNorm();
  if (r2 < 1e-24) {
    // exact limit of (central image) - G^k as x -> 0
    const int nK = spatial_series_terms(mode.k, E);
    cplx tail = 0.0;
    cplx cn = 1.0;
    const cplx ratio = mode.k / (2.0 * E) * (mode.k / (2.0 * E));
    for (int n = 1; n < nK; ++n) {
      cn *= ratio / static_cast<double>(n);
      tail += cn / static_cast<double>(n);
    }
    if (mode.k == cplx{0.0, 0.0}) {
      out.value += (kEulerGamma + 2.0 * std::log(E)) / (4.0 * kPi);
    } else {
      out.value += (2.0 * std::log(2.0 * E / mode.k) - kEulerGamma - tail) /
                       (4.0 * kPi) +
                   cplx{0.0, 0.25};
    }
    // the gradient of the central-image difference vanishes in the limit
    return out;
  }

  const int nK = spatial_series_terms(mode.k, E);
  const auto En = sf::expint_sequence(nK, E * E * r2);
  cplx cn = 1.0;
  const cplx ratio = mode.k / (2.0 * E) * (mode.k / (2.0 * E));
  cplx inner = En[0];
  cplx ginner = std::exp(-E * E * r2) / (E * E * r2);
  for (int n = 1; n < nK; ++n) {
    cn *= ratio / static_cast<double>(n);
    inner += cn * En[static_cast<size_t>(n)];
    ginner += cn * En[static_cast<size_t>(n - 1)];
  }
  out.value += -(1.0 / (4.0 * kPi)) * inner - greens_free(x, mode.k);
  const cplx g = (E * E / (2.0 * kPi)) * ginner;
  out.gradient += Vec2c{g * x.x(), g * x.y()} - greens_free_grad(x, mode.k);
  return out;
}

QuasiRemainder periodic_static_remainder(const Vec2& x, double L) {
  QuasiRemainder out;
  const double r2 = x.squaredNorm();
  if (r2 < 1e-24) {
    out.value = std::log(2.0 * kPi / L) / (2.0 * kPi);
    out.gradient = Vec2c::Zero();
    return out;
  }
  const auto g = greens_periodic_static(x, L, true);
  out.value = g.value - std::log(std::sqrt(r2)) / (2.0 * kPi);
  const double c = 1.0 / (2.0 * kPi * r2);
  out.gradient = *g.gradient - Vec2c{c * x.x(), c * x.y()};
  return out;
}

double default_ewald_parameter(double L) { return 4.0 / L; }

} // namespace metascreen

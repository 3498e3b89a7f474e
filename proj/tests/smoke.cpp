#include <cstdio>
#include <cmath>
#include "metascreen/special_functions.hpp"
#include "metascreen/lattice_green.hpp"
using namespace metascreen;
using namespace std::complex_literals;

int main() {
  // Hankel reference: H0^(1)(1) = 0.76519768655796655 + 0.088256964215676958 i
  auto h = sf::hankel1(0, 1.0 + 0.0i);
  std::printf("H0(1) = %.15f %+.15f i  (err %.2e)\n", h.real(), h.imag(),
              std::abs(h - (0.76519768655796655 + 0.088256964215676958i)));
  // complex series checks vs mpmath
  auto j = sf::bessel_j(3, cplx(2.0, -0.5));
  std::printf("J3(2-0.5i) err %.2e\n", std::abs(j - (0.118408351851126014 - 0.0816404493790483458i)));
  auto y = sf::bessel_y(2, cplx(15.0, -2.0));
  std::printf("Y2(15-2i) err %.2e\n", std::abs(y - (-0.735870724605387979 - 0.195962196121788504i)));
  // erfc sanity: real axis vs std::erfc, plus conjugate symmetry
  std::printf("erfc(0.7) err %.2e\n", std::abs(sf::erfc_c(cplx(0.7, 1e-18)) - std::erfc(0.7)));
  // E1: E1(0.5)=0.55977359477616081, E1(3)=0.013048381094197037
  std::printf("E1(0.5) err %.2e, E1(3) err %.2e\n",
              std::abs(sf::expint_e1(0.5) - 0.55977359477616081),
              std::abs(sf::expint_e1(3.0) - 0.013048381094197037));

  // quasiperiodic Green: spectral vs ewald at a safe height
  QuasiMode mode = QuasiMode::fixed(0.3, cplx(0.7, 0.0), 1.0);
  Vec2 x{0.13, 0.37};
  auto gs = greens_quasi_spectral(x, mode, 200, true);
  auto ge = greens_quasi_ewald(x, mode, 4.0, true);
  std::printf("spectral  = %.15g %+.15g i\n", gs.value.real(), gs.value.imag());
  std::printf("ewald     = %.15g %+.15g i\n", ge.value.real(), ge.value.imag());
  std::printf("rel diff  = %.2e\n", std::abs(gs.value - ge.value) / std::abs(ge.value));
  std::printf("grad diff = %.2e\n", (gs.gradient.value() - ge.gradient.value()).norm());
  // E-independence
  auto g3 = greens_quasi_ewald(Vec2{0.2, 0.05}, QuasiMode::fixed(0.3, 0.7, 1.0), 3.0);
  auto g6 = greens_quasi_ewald(Vec2{0.2, 0.05}, QuasiMode::fixed(0.3, 0.7, 1.0), 6.0);
  std::printf("E-indep   = %.2e\n", std::abs(g3.value - g6.value));
  // quasiperiodicity
  auto gshift = greens_quasi_ewald(Vec2{0.13 + 1.0, 0.37}, mode, 4.0);
  auto qp = gshift.value - std::exp(1.0i * mode.alpha * 1.0) * ge.value;
  std::printf("quasiper  = %.2e\n", std::abs(qp));
  // static periodic closed form vs spectral series at (0.25, 0.25)
  double x1 = 0.25, x2v = 0.25, L = 1.0;
  double ref = std::abs(x2v) / (2.0 * L);
  for (int n = 1; n <= 400; ++n) {
    double q = 2 * M_PI * n / L;
    ref -= 2.0 * std::cos(q * x1) * std::exp(-q * std::abs(x2v)) / (2.0 * L * q);
  }
  auto g00 = greens_periodic_static(Vec2{x1, x2v}, L, true);
  std::printf("G00 closed=%.15g vs series=%.15g diff=%.2e\n", g00.value.real(), ref,
              std::abs(g00.value.real() - ref));
  // static remainder diagonal: ln(2*pi/L)/(2*pi)
  auto rem0 = periodic_static_remainder(Vec2{0.0, 0.0}, 1.0);
  std::printf("rem00(0) = %.15g vs %.15g\n", rem0.value.real(), std::log(2 * M_PI) / (2 * M_PI));
  // remainder consistency at small x: rem(x) ~ rem(0) + grad small
  auto rem1 = periodic_static_remainder(Vec2{1e-5, -2e-5}, 1.0);
  std::printf("rem00 cont: %.2e\n", std::abs(rem1.value - rem0.value));
  // quasi remainder diagonal consistency: approach x->0
  QuasiMode m2 = QuasiMode::fixed(0.4, cplx(0.5, 0.0), 1.0);
  auto r0 = quasi_remainder(Vec2{0, 0}, m2, 4.0);
  auto r1 = quasi_remainder(Vec2{1e-6, 1e-6}, m2, 4.0);
  std::printf("quasi rem diag: %.3e (grad %.3e)\n", std::abs(r0.value - r1.value),
              (r0.gradient - r1.gradient).norm());
  return 0;
}

#include "metascreen/resonance.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace metascreen {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
const cplx kI{0.0, 1.0};

double sigma_min_ratio(const MatrixXc& A, double* sigma_max = nullptr) {
  Eigen::JacobiSVD<MatrixXc> svd(A);
  const auto& sv = svd.singularValues();
  if (sigma_max) *sigma_max = sv(0);
  return sv(sv.size() - 1);
}

} // namespace

std::pair<double, double> band_asymptotic(const MetascreenConfig& cfg, double delta,
                                          double alpha, int N) {
  if (std::abs(alpha) < 1e-3)
    throw std::invalid_argument(
        "band_asymptotic: |alpha| too small; use res0_asymptotic in the slaved regime");
  const QuasiCapacitance qc = capacitance_quasi(cfg, alpha, N);
  return {cfg.v_b * std::sqrt(delta * qc.lambda1 / cfg.disk_area()),
          cfg.v_b * std::sqrt(delta * qc.lambda2 / cfg.disk_area())};
}

ResonancePair res0_asymptotic(const MetascreenConfig& cfg, const Incidence& inc,
                              double delta, const CapacitanceData& data) {
  const double w = inc.w_perp();
  const double area = cfg.disk_area();
  const double cperp = data.dipole.y();
  ResonancePair rp;
  rp.omega1 = -kI * delta * cfg.v_b * cfg.v_b * w * cfg.L / area;
  rp.omega2 = std::sqrt(2.0 * delta * cfg.v_b * cfg.v_b * data.C11_0 / area) -
              kI * delta * cfg.v_b * cfg.v_b * w * cperp * cperp / (2.0 * area * cfg.L);
  rp.method = ResonanceMethod::asymptotic;
  rp.delta = delta;
  rp.alpha0 = inc.alpha0;
  return rp;
}

ResonancePair res0_asymptotic(const MetascreenConfig& cfg, const Incidence& inc,
                              double delta, int N) {
  return res0_asymptotic(cfg, inc, delta, capacitance_bundle(cfg, inc, N));
}

double subwavelength_scale(const MetascreenConfig& cfg, double delta, double C11_0) {
  return std::sqrt(2.0 * delta * cfg.v_b * cfg.v_b * C11_0 / cfg.disk_area());
}

MullerResult muller_iterate(const std::function<cplx(cplx)>& f, cplx z0, cplx z1,
                            cplx z2, const MullerOptions& opts) {
  MullerResult res;
  cplx f0 = f(z0), f1 = f(z1), f2 = f(z2);
  for (int it = 0; it < opts.max_iter; ++it) {
    const cplx q = (z2 - z1) / (z1 - z0);
    const cplx a = q * f2 - q * (1.0 + q) * f1 + q * q * f0;
    const cplx b = (2.0 * q + 1.0) * f2 - (1.0 + q) * (1.0 + q) * f1 + q * q * f0;
    const cplx c = (1.0 + q) * f2;
    const cplx disc = std::sqrt(b * b - 4.0 * a * c);
    const cplx den1 = b + disc, den2 = b - disc;
    const cplx den = (std::abs(den1) >= std::abs(den2)) ? den1 : den2;
    if (std::abs(den) == 0.0) break;
    const cplx z3 = z2 - (z2 - z1) * (2.0 * c / den);
    res.iterations = it + 1;
    const double step = std::abs(z3 - z2);
    z0 = z1; f0 = f1;
    z1 = z2; f1 = f2;
    z2 = z3; f2 = f(z3);
    if (step < opts.tol_dz * std::max(1.0, std::abs(z3))) {
      res.converged = true;
      break;
    }
  }
  res.omega = z2;
  return res;
}

MullerResult resonance_muller(const MetascreenConfig& cfg, const AlphaSpec& aspec,
                              double delta, cplx guess, int N,
                              const MullerOptions& opts) {
  // Iterate on the reciprocal bilinear form 1/(u^H A^{-1} v): it is holomorphic
  // with simple zeros exactly at the characteristic values, so Muller's
  // quadratic model applies. sigma_min enters as the convergence certificate;
  // iterating on sigma_min itself stalls near the root (it is |g(omega)| for a
  // holomorphic g, and the cone defeats the step tolerance).
  const int dim = BoundaryBasis{N}.dim();
  VectorXc u(dim), v(dim);
  for (int i = 0; i < dim; ++i) {
    u(i) = cplx{std::sin(3.0 * i + 1.0), std::cos(2.0 * i + 1.0)};
    v(i) = cplx{std::cos(1.7 * i + 0.3), std::sin(2.3 * i + 0.7)};
  }
  u.normalize();
  v.normalize();
  auto f = [&](cplx omega) -> cplx {
    const OperatorMatrix A = assemble_A(cfg, aspec, delta, omega, N);
    return 1.0 / (u.adjoint() * A.entries.partialPivLu().solve(v)).value();
  };
  const double h = 1e-3 * std::max(1e-3, std::abs(guess));
  MullerResult res = muller_iterate(f, guess - h, guess + h, guess, opts);

  double smax = 0.0;
  const OperatorMatrix A = assemble_A(cfg, aspec, delta, res.omega, N);
  const double smin = sigma_min_ratio(A.entries, &smax);
  res.residual = smin / smax;
  if (res.residual > opts.residual_tol) res.converged = false;
  if (opts.window_radius > 0.0)
    res.in_window = std::abs(res.omega) <= opts.window_radius;
  return res;
}

std::vector<BandPoint> band_sweep(const MetascreenConfig& cfg, double delta,
                                  const std::vector<double>& alpha_grid, int N,
                                  bool parallel) {
  std::vector<BandPoint> out(alpha_grid.size());
  const auto work = [&](size_t i) {
    BandPoint& bp = out[i];
    bp.alpha = alpha_grid[i];
    bp.continuum_boundary = std::abs(bp.alpha);
    try {
      const auto seeds = band_asymptotic(cfg, delta, bp.alpha, N);
      const AlphaSpec aspec = AlphaSpec::fixed(bp.alpha);
      MullerOptions opts;
      const MullerResult r1 = resonance_muller(cfg, aspec, delta, seeds.first, N, opts);
      const MullerResult r2 = resonance_muller(cfg, aspec, delta, seeds.second, N, opts);
      if (!r1.converged || !r2.converged)
        throw NumericalError("muller did not converge at this alpha");
      bp.omega1 = r1.omega;
      bp.omega2 = r2.omega;
      bp.regime1 = regime_classify(bp.alpha, bp.omega1.real(), cfg.L).regime;
      bp.regime2 = regime_classify(bp.alpha, bp.omega2.real(), cfg.L).regime;
      bp.ok = true;
    } catch (const std::exception& e) {
      bp.ok = false;
      bp.error = e.what();
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < alpha_grid.size(); ++i) work(i);
  } else {
    for (size_t i = 0; i < alpha_grid.size(); ++i) work(i);
  }
  return out;
}

cplx log_det_A(const MetascreenConfig& cfg, const AlphaSpec& aspec, double delta,
               cplx omega, int N) {
  const OperatorMatrix A = assemble_A(cfg, aspec, delta, omega, N);
  Eigen::PartialPivLU<MatrixXc> lu(A.entries);
  const MatrixXc& u = lu.matrixLU();
  cplx logdet = std::log(cplx{static_cast<double>(lu.permutationP().determinant()), 0.0});
  for (Eigen::Index i = 0; i < u.rows(); ++i) logdet += std::log(u(i, i));
  return logdet;
}

WindingResult winding_number(const MetascreenConfig& cfg, const AlphaSpec& aspec,
                             double delta, double radius, double indent_radius,
                             int N) {
  // Positively oriented boundary of the half-disk rotated to
  // arg omega in [-3pi/4, pi/4], indented around the static branch point at
  // the origin. This encloses exactly the characteristic values with
  // non-negative real part (the broad root sits on the negative imaginary
  // axis, the sharp root just under the positive real axis) and excludes
  // their time-reversal mirrors -conj(omega).
  const double R = radius, rho = indent_radius;
  const double a_hi = kPi / 4.0, a_lo = -3.0 * kPi / 4.0;
  std::vector<cplx> pts;
  const int nseg = 32, narc = 96;
  for (int i = 0; i < nseg; ++i) // inward along arg = pi/4
    pts.push_back((R + (rho - R) * i / nseg) * std::exp(kI * a_hi));
  for (int i = 0; i < narc / 4; ++i) // clockwise around the origin
    pts.push_back(rho * std::exp(kI * (a_hi + (a_lo - a_hi) * i / (narc / 4))));
  for (int i = 0; i < nseg; ++i) // outward along arg = -3pi/4
    pts.push_back((rho + (R - rho) * i / nseg) * std::exp(kI * a_lo));
  for (int i = 0; i <= narc; ++i) // big arc through -iR and +R
    pts.push_back(R * std::exp(kI * (a_lo + (a_hi - a_lo) * i / narc)));

  WindingResult res;
  std::vector<cplx> vals(pts.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < pts.size(); ++i)
    vals[i] = log_det_A(cfg, aspec, delta, pts[i], N);
  res.evaluations = static_cast<int>(pts.size());

  auto wrap = [](double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a < -kPi) a += 2.0 * kPi;
    return a;
  };

  // phase increment with adaptive bisection until each step is resolved
  std::function<double(cplx, cplx, cplx, cplx, int)> delta_arg =
      [&](cplx za, cplx zb, cplx fa, cplx fb, int depth) -> double {
    const double d = wrap(fb.imag() - fa.imag());
    if (std::abs(d) < 1.0 || depth > 26) return d;
    const cplx zm = 0.5 * (za + zb);
    const cplx fm = log_det_A(cfg, aspec, delta, zm, N);
    ++res.evaluations;
    return delta_arg(za, zm, fa, fm, depth + 1) + delta_arg(zm, zb, fm, fb, depth + 1);
  };

  double total = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const size_t j = (i + 1) % pts.size();
    total += delta_arg(pts[i], pts[j], vals[i], vals[j], 0);
  }
  res.raw = total / (2.0 * kPi);
  res.winding = static_cast<int>(std::lround(res.raw));
  return res;
}

} // namespace metascreen

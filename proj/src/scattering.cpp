#include "metascreen/scattering.hpp"

#include <algorithm>
#include <cmath>

namespace metascreen {

namespace {
const cplx kI{0.0, 1.0};

struct SolveContext {
  MatrixXc A;
  Eigen::PartialPivLU<MatrixXc> Sq_lu;
  MatrixXc T1;
  int N;
};

SolveContext build_context(const MetascreenConfig& cfg, const Incidence& inc,
                           double delta, cplx omega, int N) {
  SolveContext ctx;
  ctx.N = N;
  ctx.T1 = dtn_interior(cfg, omega / cfg.v_b, N);
  const QuasiMode mode = QuasiMode::slaved(inc.alpha0, omega, cfg.L);
  const QuasiOperatorPair qp = assemble_quasi_operator_pair(cfg, mode, N);
  ctx.Sq_lu.compute(qp.S.transpose());
  if (ctx.Sq_lu.rcond() < 1e-13)
    throw NumericalError("scattering: quasiperiodic single layer ill-conditioned");
  const MatrixXc T2 =
      ctx.Sq_lu.solve((0.5 * MatrixXc::Identity(qp.S.rows(), qp.S.cols()) + qp.K).transpose())
          .transpose();
  ctx.A = ctx.T1 - delta * T2;
  // reuse the factorization of S^T for psi = S^{-1} eta via a second transpose
  ctx.Sq_lu.compute(qp.S);
  return ctx;
}

cplx smatrix_formula_t(const ResonancePair& rp, double omega) {
  cplx t = rp.omega1 / (rp.omega1 - omega);
  if (rp.omega2.imag() != 0.0)
    t -= 2.0 * kI * omega * rp.omega2.imag() / (rp.omega2 * rp.omega2 - omega * omega);
  return t;
}

cplx smatrix_formula_r(const ResonancePair& rp, double omega) {
  cplx r = rp.omega1 / (rp.omega1 - omega) - 1.0;
  if (rp.omega2.imag() != 0.0)
    r += 2.0 * kI * omega * rp.omega2.imag() / (rp.omega2 * rp.omega2 - omega * omega);
  return r;
}

ScatteringResult as_result(double omega, cplx r, cplx t, ScatteringMethod m,
                           double residual = 0.0) {
  ScatteringResult out;
  out.omega = omega;
  out.r = r;
  out.t = t;
  out.T = std::norm(t);
  out.R = std::norm(r);
  out.method = m;
  out.residual = residual;
  return out;
}

} // namespace

ScatteringResult solve_scattering(const MetascreenConfig& cfg, const Incidence& inc,
                                  double delta, double omega, int N) {
  if (!inc.valid()) throw std::invalid_argument("incidence requires |alpha0| < 1");
  const auto regime = regime_classify(omega * inc.alpha0, omega, cfg.L);
  if (regime.regime != Regime::first_continuum)
    throw NumericalError("solve_scattering: (alpha, omega) outside the first radiation continuum");

  const SolveContext ctx = build_context(cfg, inc, delta, omega, N);
  const cplx rho = omega;
  const cplx phase_up{inc.alpha0, inc.w_perp()};
  const VectorXc uin = plane_wave_trace(cfg, rho, phase_up, N);
  const VectorXc duin = plane_wave_normal_derivative(cfg, rho, phase_up, N);
  const VectorXc F = delta * duin - ctx.T1 * uin;

  Eigen::PartialPivLU<MatrixXc> Alu(ctx.A);
  const VectorXc eta = Alu.solve(F);
  const double residual = (ctx.A * eta - F).norm() / std::max(F.norm(), 1e-300);
  const VectorXc psi = ctx.Sq_lu.solve(eta);

  const double k3 = omega * inc.w_perp();
  const cplx pref = 1.0 / (2.0 * kI * k3 * cfg.L);
  const cplx up = (radiation_row(cfg, rho, phase_up, N) * psi).value();
  const cplx down =
      (radiation_row(cfg, rho, cplx{inc.alpha0, -inc.w_perp()}, N) * psi).value();
  return as_result(omega, pref * down, 1.0 + pref * up, ScatteringMethod::numeric,
                   residual);
}

ScatteringResult smatrix_asymptotic(const MetascreenConfig& cfg, const Incidence& inc,
                                    double delta, double omega,
                                    const ResonancePair& rp, const Vec2& dipole) {
  (void)cfg;
  (void)inc;
  (void)delta;
  if (dipole.y() == 0.0)
    throw std::invalid_argument(
        "smatrix_asymptotic: c_perp = 0 is the bound-state configuration; "
        "use bic_check / smatrix_one_resonance");
  return as_result(omega, smatrix_formula_r(rp, omega), smatrix_formula_t(rp, omega),
                   ScatteringMethod::asymptotic);
}

ScatteringResult smatrix_one_resonance(const ResonancePair& rp, double omega) {
  const cplx t1 = rp.omega1 / (rp.omega1 - omega);
  return as_result(omega, t1 - 1.0, t1, ScatteringMethod::asymptotic);
}

std::vector<SpectrumRow> spectrum_sweep(const MetascreenConfig& cfg,
                                        const Incidence& inc, double delta,
                                        const std::vector<double>& omega_grid,
                                        const SpectrumOptions& opts) {
  const CapacitanceData data = capacitance_bundle(cfg, inc, opts.N);
  ResonancePair rp = res0_asymptotic(cfg, inc, delta, data);

  std::vector<double> grid = omega_grid;
  if (opts.refine_sharp_feature) {
    // center the windows on the Muller-corrected sharp root when available
    double center = rp.omega2.real();
    try {
      MullerOptions mo;
      const MullerResult mr = resonance_muller(
          cfg, AlphaSpec::incidence(inc), delta, rp.omega2, opts.N, mo);
      if (mr.converged && std::abs(mr.omega.real() - center) < 0.2 * center)
        center = mr.omega.real();
    } catch (const std::exception&) {
    }
    const double im1 = std::abs(rp.omega1.imag());
    const double im2 = std::abs(rp.omega2.imag());
    const double wstar = im2 > 0.0 ? center * im2 / im1 : 0.01 * center;
    auto window = [&](double half, int count) {
      for (int i = 0; i <= count; ++i)
        grid.push_back(center - half + 2.0 * half * i / count);
    };
    window(6.0 * wstar, 120);
    window(1.0 * wstar, 80);
    window(25.0 * wstar, 40);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (!omega_grid.empty()) {
    const double lo = omega_grid.front(), hi = omega_grid.back();
    grid.erase(std::remove_if(grid.begin(), grid.end(),
                              [&](double w) { return w < lo || w > hi; }),
               grid.end());
  }

  auto run_grid = [&](const std::vector<double>& g) {
    std::vector<SpectrumRow> rows(g.size());
    const auto work = [&](size_t i) {
      SpectrumRow& row = rows[i];
      row.omega = g[i];
      const ScatteringResult asym{
          as_result(g[i], smatrix_formula_r(rp, g[i]), smatrix_formula_t(rp, g[i]),
                    ScatteringMethod::asymptotic)};
      row.T_asym = asym.T;
      row.R_asym = asym.R;
      try {
        const ScatteringResult num = solve_scattering(cfg, inc, delta, g[i], opts.N);
        row.T_num = num.T;
        row.R_num = num.R;
        row.t = num.t;
        row.r = num.r;
        row.residual = num.residual;
        row.ok = true;
      } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
      }
    };
    if (opts.parallel) {
#pragma omp parallel for schedule(dynamic)
      for (size_t i = 0; i < g.size(); ++i) work(i);
    } else {
      for (size_t i = 0; i < g.size(); ++i) work(i);
    }
    return rows;
  };

  std::vector<SpectrumRow> rows = run_grid(grid);

  if (opts.refine_spikes) {
    std::vector<double> extra;
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
      if (!rows[i].ok || !rows[i + 1].ok) continue;
      if (std::abs(rows[i + 1].T_num - rows[i].T_num) > 0.2 &&
          rows[i + 1].omega - rows[i].omega > 1e-9) {
        for (int j = 1; j < 40; ++j)
          extra.push_back(rows[i].omega +
                          (rows[i + 1].omega - rows[i].omega) * j / 40.0);
      }
    }
    if (!extra.empty()) {
      std::vector<SpectrumRow> more = run_grid(extra);
      rows.insert(rows.end(), more.begin(), more.end());
      std::sort(rows.begin(), rows.end(),
                [](const SpectrumRow& a, const SpectrumRow& b) { return a.omega < b.omega; });
    }
  }
  return rows;
}

double eigenmode_farfield_amplitude(const MetascreenConfig& cfg, const Incidence& inc,
                                    double delta, cplx omega, int N) {
  const SolveContext ctx = build_context(cfg, inc, delta, omega, N);
  Eigen::JacobiSVD<MatrixXc> svd(ctx.A, Eigen::ComputeFullV);
  const VectorXc eta = svd.matrixV().col(ctx.A.cols() - 1);
  const VectorXc psi = ctx.Sq_lu.solve(eta);
  const cplx k3 = omega * inc.w_perp();
  const cplx pref = 1.0 / (2.0 * kI * k3 * cfg.L);
  const cplx up =
      (radiation_row(cfg, omega, cplx{inc.alpha0, inc.w_perp()}, N) * psi).value();
  const cplx down =
      (radiation_row(cfg, omega, cplx{inc.alpha0, -inc.w_perp()}, N) * psi).value();
  const double norm_eta = std::sqrt(2.0 * M_PI * cfg.R_D) * eta.norm();
  return std::max(std::abs(pref * up), std::abs(pref * down)) / norm_eta;
}

BicReport bic_check(const MetascreenConfig& cfg, double delta, int N) {
  if (cfg.theta != 0.0)
    throw std::invalid_argument("bic_check: requires the symmetric dimer (theta = 0)");
  const Incidence inc{0.0}; // perpendicular incidence

  BicReport rep;
  const CapacitanceData data = capacitance_bundle(cfg, inc, N);
  ResonancePair rp = res0_asymptotic(cfg, inc, delta, data);

  MullerOptions mo;
  const MullerResult mr =
      resonance_muller(cfg, AlphaSpec::incidence(inc), delta, rp.omega2, N, mo);
  if (!mr.converged) throw NumericalError("bic_check: muller did not converge");
  rep.omega2 = mr.omega;
  rep.im_omega2 = mr.omega.imag();
  rep.realness_ok = std::abs(rep.im_omega2) < 1e-8;

  rep.farfield_amplitude =
      eigenmode_farfield_amplitude(cfg, inc, delta, rep.omega2, N);
  rep.nonradiation_ok = rep.farfield_amplitude < 1e-6;

  // eigenmode parity under the in-plane flip composed with the disk swap
  {
    const SolveContext ctx = build_context(cfg, inc, delta, rep.omega2, N);
    Eigen::JacobiSVD<MatrixXc> svd(ctx.A, Eigen::ComputeFullV);
    const VectorXc eta = svd.matrixV().col(ctx.A.cols() - 1);
    const BoundaryBasis basis{N};
    double worst = 0.0;
    for (int n = -N; n <= N; ++n) {
      const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
      worst = std::max(worst, std::abs(eta(basis.index(0, n)) +
                                       sgn * eta(basis.index(1, -n))));
    }
    rep.parity_residual = worst / eta.cwiseAbs().maxCoeff();
    rep.parity_ok = rep.parity_residual < 1e-8;
  }

  // no sharp feature: numeric spectrum stays near the one-resonance background
  rep.spectral_tolerance = 5.0 * std::sqrt(delta);
  const double b = rp.omega2.real();
  double dev = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double w = b * (0.98 + 0.04 * i / 60.0);
    const ScatteringResult num = solve_scattering(cfg, inc, delta, w, N);
    const ScatteringResult one = smatrix_one_resonance(rp, w);
    dev = std::max(dev, std::abs(num.T - one.T));
  }
  rep.spectral_deviation = dev;
  rep.nonexcitation_ok = dev < rep.spectral_tolerance;
  return rep;
}

QSolution solve_q(const MetascreenConfig& cfg, const Incidence& inc, double delta,
                  double omega, int N) {
  const QuasiMode mode = QuasiMode::slaved(inc.alpha0, omega, cfg.L);
  const MatrixXc Sq = assemble_single_layer_quasi(cfg, mode, N);
  Eigen::PartialPivLU<MatrixXc> lu(Sq);
  if (lu.rcond() < 1e-13)
    throw NumericalError("solve_q: quasiperiodic single layer ill-conditioned");
  const VectorXc uin =
      plane_wave_trace(cfg, omega, cplx{inc.alpha0, inc.w_perp()}, N);
  const VectorXc psi_in = lu.solve(uin);

  QSolution out;
  for (int i = 0; i < 2; ++i)
    out.p(i) = (disk_integral_row(cfg, i, N) * psi_in).value();

  const CapacitanceData data = capacitance_bundle(cfg, inc, N);
  Eigen::Matrix2cd C0;
  C0 << data.C11_0, -data.C11_0, -data.C11_0, data.C11_0;
  const Eigen::Matrix2cd M =
      C0 + omega * data.C1 -
      omega * omega * cfg.disk_area() / (delta * cfg.v_b * cfg.v_b) *
          Eigen::Matrix2cd::Identity();
  if (data.dipole.y() == 0.0 && std::abs(M.determinant()) < 1e-14)
    throw NumericalError("solve_q: reduced system singular (c_perp = 0 at resonance)");
  out.q = M.partialPivLu().solve(-out.p);
  return out;
}

} // namespace metascreen

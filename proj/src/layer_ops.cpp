#include "metascreen/layer_ops.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "metascreen/special_functions.hpp"

namespace metascreen {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
const cplx kI{0.0, 1.0};

cplx ipow(cplx base, int n) {
  if (n < 0) return 1.0 / ipow(base, -n);
  cplx r = 1.0;
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

std::vector<double> circle_nodes(int Mq) {
  std::vector<double> t(static_cast<size_t>(Mq));
  for (int q = 0; q < Mq; ++q) t[static_cast<size_t>(q)] = 2.0 * kPi * q / Mq;
  return t;
}

// Fourier transform of a smooth-kernel block sampled on the quadrature grid:
// B(m,n) = (2 pi R / Mq^2) sum_{p,q} e^{-i m s_p} K(p,q) e^{i n t_q}.
MatrixXc transform_block(const MatrixXc& K, int N, double R) {
  const int Mq = static_cast<int>(K.rows());
  const int nm = 2 * N + 1;
  MatrixXc Eout(nm, Mq), Ein(Mq, nm);
  for (int p = 0; p < Mq; ++p) {
    const double s = 2.0 * kPi * p / Mq;
    for (int n = -N; n <= N; ++n) {
      Eout(n + N, p) = std::exp(-kI * static_cast<double>(n) * s);
      Ein(p, n + N) = std::exp(kI * static_cast<double>(n) * s);
    }
  }
  return (2.0 * kPi * R / (Mq * Mq)) * (Eout * K * Ein);
}

cplx self_diag_single_layer(double R, cplx k, int n) {
  const int m = std::abs(n);
  if (k == cplx{0.0, 0.0}) return m == 0 ? cplx{R * std::log(R), 0.0} : cplx{-R / (2.0 * m), 0.0};
  return -0.5 * kI * kPi * R * sf::bessel_j(m, k * R) * sf::hankel1(m, k * R);
}

cplx self_diag_neumann_poincare(double R, cplx k, int n) {
  const int m = std::abs(n);
  if (k == cplx{0.0, 0.0}) return m == 0 ? cplx{0.5, 0.0} : cplx{0.0, 0.0};
  return -0.5 * kI * kPi * R * k * sf::bessel_j(m, k * R) * sf::hankel1_deriv(m, k * R) - 0.5;
}

void require_valid_order(int N) {
  if (N < 1) throw std::invalid_argument("multipole order N must be >= 1");
}

// Single layer and Neumann-Poincare in one pass: the lattice remainder value
// and gradient come from the same Ewald evaluation.
QuasiOperatorPair assemble_quasi_pair(const MetascreenConfig& cfg, const QuasiMode& mode,
                              int N, double E) {
  require_valid_order(N);
  if (E <= 0.0) E = default_ewald_parameter(cfg.L);
  const double R = cfg.R_D;
  const int Mq = quadrature_nodes(N);
  const auto centers = disk_centers(cfg);
  const auto t = circle_nodes(Mq);

  QuasiOperatorPair out{assemble_single_layer_free(cfg, mode.k, N),
                        assemble_neumann_poincare_free(cfg, mode.k, N)};

  const BoundaryBasis basis{N};
  const int nm = basis.modes();

  // remainder kernel depends on x - y only, so the two self blocks coincide
  MatrixXc selfS(Mq, Mq), selfK(Mq, Mq);
  for (int p = 0; p < Mq; ++p) {
    const Vec2 nu{std::cos(t[static_cast<size_t>(p)]), std::sin(t[static_cast<size_t>(p)])};
    for (int q = 0; q < Mq; ++q) {
      const Vec2 xy = R * Vec2{std::cos(t[static_cast<size_t>(p)]) - std::cos(t[static_cast<size_t>(q)]),
                               std::sin(t[static_cast<size_t>(p)]) - std::sin(t[static_cast<size_t>(q)])};
      const auto rem = quasi_remainder(xy, mode, E);
      selfS(p, q) = rem.value;
      selfK(p, q) = nu.x() * rem.gradient.x() + nu.y() * rem.gradient.y();
    }
  }
  const MatrixXc selfSb = transform_block(selfS, N, R);
  const MatrixXc selfKb = transform_block(selfK, N, R);
  for (int j = 0; j < 2; ++j) {
    out.S.block(j * nm, j * nm, nm, nm) += selfSb;
    out.K.block(j * nm, j * nm, nm, nm) += selfKb;
  }

  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    MatrixXc KS(Mq, Mq), KK(Mq, Mq);
    for (int p = 0; p < Mq; ++p) {
      const Vec2 x = centers[static_cast<size_t>(i)] +
                     R * Vec2{std::cos(t[static_cast<size_t>(p)]), std::sin(t[static_cast<size_t>(p)])};
      const Vec2 nu{std::cos(t[static_cast<size_t>(p)]), std::sin(t[static_cast<size_t>(p)])};
      for (int q = 0; q < Mq; ++q) {
        const Vec2 y = centers[static_cast<size_t>(j)] +
                       R * Vec2{std::cos(t[static_cast<size_t>(q)]), std::sin(t[static_cast<size_t>(q)])};
        const auto rem = quasi_remainder(x - y, mode, E);
        KS(p, q) = rem.value;
        KK(p, q) = nu.x() * rem.gradient.x() + nu.y() * rem.gradient.y();
      }
    }
    out.S.block(i * nm, j * nm, nm, nm) += transform_block(KS, N, R);
    out.K.block(i * nm, j * nm, nm, nm) += transform_block(KK, N, R);
  }
  return out;
}

MatrixXc solve_from_right(const MatrixXc& numerator, const MatrixXc& S,
                          const char* what) {
  Eigen::PartialPivLU<MatrixXc> lu(S.transpose());
  if (lu.rcond() < 1e-12)
    throw NumericalError(std::string(what) + ": matrix ill-conditioned");
  return lu.solve(numerator.transpose()).transpose();
}

} // namespace

int quadrature_nodes(int N) { return 4 * N + 16; }

MatrixXc assemble_single_layer_free(const MetascreenConfig& cfg, cplx k, int N) {
  require_valid_order(N);
  const double R = cfg.R_D;
  const int Mq = quadrature_nodes(N);
  const BoundaryBasis basis{N};
  const int nm = basis.modes();
  const auto centers = disk_centers(cfg);
  const auto t = circle_nodes(Mq);

  MatrixXc S = MatrixXc::Zero(basis.dim(), basis.dim());
  for (int j = 0; j < 2; ++j)
    for (int n = -N; n <= N; ++n)
      S(basis.index(j, n), basis.index(j, n)) = self_diag_single_layer(R, k, n);

  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    MatrixXc K(Mq, Mq);
    for (int p = 0; p < Mq; ++p) {
      const Vec2 x = centers[static_cast<size_t>(i)] +
                     R * Vec2{std::cos(t[static_cast<size_t>(p)]), std::sin(t[static_cast<size_t>(p)])};
      for (int q = 0; q < Mq; ++q) {
        const Vec2 y = centers[static_cast<size_t>(j)] +
                       R * Vec2{std::cos(t[static_cast<size_t>(q)]), std::sin(t[static_cast<size_t>(q)])};
        K(p, q) = greens_free(x - y, k);
      }
    }
    S.block(i * nm, j * nm, nm, nm) = transform_block(K, N, R);
  }
  return S;
}

MatrixXc assemble_neumann_poincare_free(const MetascreenConfig& cfg, cplx k, int N) {
  require_valid_order(N);
  const double R = cfg.R_D;
  const int Mq = quadrature_nodes(N);
  const BoundaryBasis basis{N};
  const int nm = basis.modes();
  const auto centers = disk_centers(cfg);
  const auto t = circle_nodes(Mq);

  MatrixXc Kst = MatrixXc::Zero(basis.dim(), basis.dim());
  for (int j = 0; j < 2; ++j)
    for (int n = -N; n <= N; ++n)
      Kst(basis.index(j, n), basis.index(j, n)) = self_diag_neumann_poincare(R, k, n);

  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    MatrixXc K(Mq, Mq);
    for (int p = 0; p < Mq; ++p) {
      const Vec2 nu{std::cos(t[static_cast<size_t>(p)]), std::sin(t[static_cast<size_t>(p)])};
      const Vec2 x = centers[static_cast<size_t>(i)] + R * nu;
      for (int q = 0; q < Mq; ++q) {
        const Vec2 y = centers[static_cast<size_t>(j)] +
                       R * Vec2{std::cos(t[static_cast<size_t>(q)]), std::sin(t[static_cast<size_t>(q)])};
        const Vec2c g = greens_free_grad(x - y, k);
        K(p, q) = nu.x() * g.x() + nu.y() * g.y();
      }
    }
    Kst.block(i * nm, j * nm, nm, nm) = transform_block(K, N, R);
  }
  return Kst;
}

MatrixXc assemble_single_layer_quasi(const MetascreenConfig& cfg,
                                     const QuasiMode& mode, int N, double E) {
  return assemble_quasi_pair(cfg, mode, N, E).S;
}

QuasiOperatorPair assemble_quasi_operator_pair(const MetascreenConfig& cfg,
                                               const QuasiMode& mode, int N,
                                               double E) {
  return assemble_quasi_pair(cfg, mode, N, E);
}

MatrixXc assemble_neumann_poincare_quasi(const MetascreenConfig& cfg,
                                         const QuasiMode& mode, int N, double E) {
  return assemble_quasi_pair(cfg, mode, N, E).K;
}

MatrixXc assemble_single_layer_periodic_static(const MetascreenConfig& cfg, int N) {
  require_valid_order(N);
  const double R = cfg.R_D;
  const int Mq = quadrature_nodes(N);
  const BoundaryBasis basis{N};
  const int nm = basis.modes();
  const auto centers = disk_centers(cfg);
  const auto t = circle_nodes(Mq);

  MatrixXc S = MatrixXc::Zero(basis.dim(), basis.dim());
  for (int j = 0; j < 2; ++j)
    for (int n = -N; n <= N; ++n)
      S(basis.index(j, n), basis.index(j, n)) =
          self_diag_single_layer(R, cplx{0.0, 0.0}, n);

  // self remainder blocks coincide, cross blocks carry the full kernel
  MatrixXc selfK(Mq, Mq);
  for (int p = 0; p < Mq; ++p)
    for (int q = 0; q < Mq; ++q) {
      const Vec2 xy = R * Vec2{std::cos(t[static_cast<size_t>(p)]) - std::cos(t[static_cast<size_t>(q)]),
                               std::sin(t[static_cast<size_t>(p)]) - std::sin(t[static_cast<size_t>(q)])};
      selfK(p, q) = periodic_static_remainder(xy, cfg.L).value;
    }
  const MatrixXc selfB = transform_block(selfK, N, R);
  for (int j = 0; j < 2; ++j) S.block(j * nm, j * nm, nm, nm) += selfB;

  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    MatrixXc K(Mq, Mq);
    for (int p = 0; p < Mq; ++p) {
      const Vec2 x = centers[static_cast<size_t>(i)] +
                     R * Vec2{std::cos(t[static_cast<size_t>(p)]), std::sin(t[static_cast<size_t>(p)])};
      for (int q = 0; q < Mq; ++q) {
        const Vec2 y = centers[static_cast<size_t>(j)] +
                       R * Vec2{std::cos(t[static_cast<size_t>(q)]), std::sin(t[static_cast<size_t>(q)])};
        K(p, q) = greens_periodic_static(x - y, cfg.L).value;
      }
    }
    S.block(i * nm, j * nm, nm, nm) += transform_block(K, N, R);
  }
  return S;
}

MatrixXc dtn_interior(const MetascreenConfig& cfg, cplx k, int N) {
  const MatrixXc S = assemble_single_layer_free(cfg, k, N);
  const MatrixXc K = assemble_neumann_poincare_free(cfg, k, N);
  const MatrixXc num = -0.5 * MatrixXc::Identity(S.rows(), S.cols()) + K;
  return solve_from_right(num, S, "free single layer");
}

OperatorMatrix assemble_A(const MetascreenConfig& cfg, const AlphaSpec& aspec,
                          double delta, cplx omega, int N) {
  if (std::abs(omega) < 1e-3)
    throw NumericalError("assemble_A: |omega| below the direct-assembly floor; "
                         "use the asymptotic formulas in this regime");
  const cplx kb = omega / cfg.v_b;
  const MatrixXc T1 = dtn_interior(cfg, kb, N);

  const QuasiMode mode = aspec.mode(omega, cfg.L);
  const QuasiOperatorPair qp = assemble_quasi_pair(cfg, mode, N, 0.0);
  const MatrixXc num = 0.5 * MatrixXc::Identity(qp.S.rows(), qp.S.cols()) + qp.K;
  const MatrixXc T2 = solve_from_right(num, qp.S, "quasiperiodic single layer");

  OperatorMatrix A;
  A.entries = T1 - delta * T2;
  A.basis = BoundaryBasis{N};
  A.kind = OperatorKind::A_omega;
  A.k = omega;
  A.alpha = mode.alpha;
  A.delta = delta;
  return A;
}

BoundaryDensity assemble_rhs(const MetascreenConfig& cfg, const Incidence& inc,
                             double delta, cplx omega, int N) {
  const cplx rho = omega;
  const cplx phase{inc.alpha0, inc.w_perp()};
  const VectorXc u = plane_wave_trace(cfg, rho, phase, N);
  const VectorXc du = plane_wave_normal_derivative(cfg, rho, phase, N);
  const MatrixXc T1 = dtn_interior(cfg, omega / cfg.v_b, N);
  BoundaryDensity f;
  f.N = N;
  f.coefficients = delta * du - T1 * u;
  return f;
}

VectorXc plane_wave_trace(const MetascreenConfig& cfg, cplx rho, cplx phase, int N) {
  const BoundaryBasis basis{N};
  const auto centers = disk_centers(cfg);
  VectorXc v(basis.dim());
  const cplx inv_phase = 1.0 / phase;
  for (int j = 0; j < 2; ++j) {
    const Vec2 c = centers[static_cast<size_t>(j)];
    const cplx kdc = rho * (0.5 * (phase + inv_phase) * c.x() +
                            0.5 / kI * (phase - inv_phase) * c.y());
    const cplx ph0 = std::exp(kI * kdc);
    for (int n = -N; n <= N; ++n)
      v(basis.index(j, n)) =
          ph0 * ipow(kI, n) * sf::bessel_j(n, rho * cfg.R_D) * ipow(phase, -n);
  }
  return v;
}

VectorXc plane_wave_normal_derivative(const MetascreenConfig& cfg, cplx rho,
                                      cplx phase, int N) {
  const BoundaryBasis basis{N};
  const auto centers = disk_centers(cfg);
  VectorXc v(basis.dim());
  const cplx inv_phase = 1.0 / phase;
  for (int j = 0; j < 2; ++j) {
    const Vec2 c = centers[static_cast<size_t>(j)];
    const cplx kdc = rho * (0.5 * (phase + inv_phase) * c.x() +
                            0.5 / kI * (phase - inv_phase) * c.y());
    const cplx ph0 = std::exp(kI * kdc);
    for (int n = -N; n <= N; ++n)
      v(basis.index(j, n)) = ph0 * ipow(kI, n) * rho *
                             sf::bessel_j_deriv(n, rho * cfg.R_D) * ipow(phase, -n);
  }
  return v;
}

RowVectorXc disk_integral_row(const MetascreenConfig& cfg, int j, int N) {
  const BoundaryBasis basis{N};
  RowVectorXc r = RowVectorXc::Zero(basis.dim());
  r(basis.index(j, 0)) = 2.0 * kPi * cfg.R_D;
  return r;
}

RowVectorXc radiation_row(const MetascreenConfig& cfg, cplx rho, cplx phase, int N) {
  const BoundaryBasis basis{N};
  const auto centers = disk_centers(cfg);
  RowVectorXc r(basis.dim());
  const cplx inv_phase = 1.0 / phase;
  for (int j = 0; j < 2; ++j) {
    const Vec2 c = centers[static_cast<size_t>(j)];
    const cplx kdc = rho * (0.5 * (phase + inv_phase) * c.x() +
                            0.5 / kI * (phase - inv_phase) * c.y());
    const cplx ph0 = std::exp(-kI * kdc);
    for (int n = -N; n <= N; ++n)
      r(basis.index(j, n)) = 2.0 * kPi * cfg.R_D * ph0 * ipow(-kI, n) *
                             sf::bessel_j(n, rho * cfg.R_D) * ipow(phase, n);
  }
  return r;
}

RowVectorXc moment_row_x(const MetascreenConfig& cfg, int N) {
  const BoundaryBasis basis{N};
  const auto centers = disk_centers(cfg);
  const double R = cfg.R_D;
  RowVectorXc r = RowVectorXc::Zero(basis.dim());
  for (int j = 0; j < 2; ++j) {
    r(basis.index(j, 0)) = centers[static_cast<size_t>(j)].x() * 2.0 * kPi * R;
    if (N >= 1) {
      r(basis.index(j, 1)) += kPi * R * R;
      r(basis.index(j, -1)) += kPi * R * R;
    }
  }
  return r;
}

RowVectorXc moment_row_y(const MetascreenConfig& cfg, int N) {
  const BoundaryBasis basis{N};
  const auto centers = disk_centers(cfg);
  const double R = cfg.R_D;
  RowVectorXc r = RowVectorXc::Zero(basis.dim());
  for (int j = 0; j < 2; ++j) {
    r(basis.index(j, 0)) = centers[static_cast<size_t>(j)].y() * 2.0 * kPi * R;
    if (N >= 1) {
      r(basis.index(j, 1)) += kI * kPi * R * R;
      r(basis.index(j, -1)) += -kI * kPi * R * R;
    }
  }
  return r;
}

namespace {

cplx radial_factor(double R, cplx k, int n, double rho, bool derivative) {
  const int m = std::abs(n);
  if (k == cplx{0.0, 0.0}) {
    if (rho >= R) {
      if (m == 0) return derivative ? cplx{R / rho, 0.0} : cplx{R * std::log(rho), 0.0};
      const double f = std::pow(R / rho, m);
      return derivative ? cplx{0.5 * R * f / rho, 0.0} : cplx{-R / (2.0 * m) * f, 0.0};
    }
    if (m == 0) return derivative ? cplx{0.0, 0.0} : cplx{R * std::log(R), 0.0};
    const double f = std::pow(rho / R, m);
    return derivative ? cplx{-0.5 * R * f / rho, 0.0} : cplx{-R / (2.0 * m) * f, 0.0};
  }
  const cplx pref = -0.5 * kI * kPi * R;
  if (rho >= R)
    return derivative ? pref * sf::bessel_j(m, k * R) * k * sf::hankel1_deriv(m, k * rho)
                      : pref * sf::bessel_j(m, k * R) * sf::hankel1(m, k * rho);
  return derivative ? pref * k * sf::bessel_j_deriv(m, k * rho) * sf::hankel1(m, k * R)
                    : pref * sf::bessel_j(m, k * rho) * sf::hankel1(m, k * R);
}

} // namespace

cplx eval_single_layer_free(const MetascreenConfig& cfg, cplx k,
                            const VectorXc& coef, const Vec2& x) {
  const BoundaryBasis basis{static_cast<int>((coef.size() / 2 - 1) / 2)};
  const auto centers = disk_centers(cfg);
  cplx val = 0.0;
  for (int j = 0; j < 2; ++j) {
    const Vec2 dx = x - centers[static_cast<size_t>(j)];
    const double rho = dx.norm();
    const cplx eith = (cplx{dx.x(), dx.y()}) / rho;
    for (int n = -basis.N; n <= basis.N; ++n)
      val += coef(basis.index(j, n)) * radial_factor(cfg.R_D, k, n, rho, false) *
             ipow(eith, n);
  }
  return val;
}

Vec2c eval_single_layer_free_grad(const MetascreenConfig& cfg, cplx k,
                                  const VectorXc& coef, const Vec2& x) {
  const BoundaryBasis basis{static_cast<int>((coef.size() / 2 - 1) / 2)};
  const auto centers = disk_centers(cfg);
  Vec2c g = Vec2c::Zero();
  for (int j = 0; j < 2; ++j) {
    const Vec2 dx = x - centers[static_cast<size_t>(j)];
    const double rho = dx.norm();
    const cplx eith = (cplx{dx.x(), dx.y()}) / rho;
    const Vec2 rhat = dx / rho;
    const Vec2 that{-rhat.y(), rhat.x()};
    for (int n = -basis.N; n <= basis.N; ++n) {
      const cplx c = coef(basis.index(j, n));
      const cplx ang = ipow(eith, n);
      const cplx dr = radial_factor(cfg.R_D, k, n, rho, true) * ang;
      const cplx dt = radial_factor(cfg.R_D, k, n, rho, false) * ang * kI *
                      static_cast<double>(n) / rho;
      g += c * (dr * Vec2c{rhat.x(), rhat.y()} + dt * Vec2c{that.x(), that.y()});
    }
  }
  return g;
}

cplx eval_single_layer_quasi(const MetascreenConfig& cfg, const QuasiMode& mode,
                             const VectorXc& coef, const Vec2& x, double E) {
  if (E <= 0.0) E = default_ewald_parameter(cfg.L);
  const BoundaryBasis basis{static_cast<int>((coef.size() / 2 - 1) / 2)};
  const int Mq = quadrature_nodes(basis.N);
  const auto centers = disk_centers(cfg);
  cplx val = eval_single_layer_free(cfg, mode.k, coef, x);
  for (int j = 0; j < 2; ++j)
    for (int q = 0; q < Mq; ++q) {
      const double t = 2.0 * kPi * q / Mq;
      const Vec2 y = centers[static_cast<size_t>(j)] + cfg.R_D * Vec2{std::cos(t), std::sin(t)};
      cplx dens = 0.0;
      for (int n = -basis.N; n <= basis.N; ++n)
        dens += coef(basis.index(j, n)) * std::exp(kI * static_cast<double>(n) * t);
      val += quasi_remainder(x - y, mode, E).value * dens * cfg.R_D * (2.0 * kPi / Mq);
    }
  return val;
}

Vec2c eval_single_layer_quasi_grad(const MetascreenConfig& cfg,
                                   const QuasiMode& mode, const VectorXc& coef,
                                   const Vec2& x, double E) {
  if (E <= 0.0) E = default_ewald_parameter(cfg.L);
  const BoundaryBasis basis{static_cast<int>((coef.size() / 2 - 1) / 2)};
  const int Mq = quadrature_nodes(basis.N);
  const auto centers = disk_centers(cfg);
  Vec2c g = eval_single_layer_free_grad(cfg, mode.k, coef, x);
  for (int j = 0; j < 2; ++j)
    for (int q = 0; q < Mq; ++q) {
      const double t = 2.0 * kPi * q / Mq;
      const Vec2 y = centers[static_cast<size_t>(j)] + cfg.R_D * Vec2{std::cos(t), std::sin(t)};
      cplx dens = 0.0;
      for (int n = -basis.N; n <= basis.N; ++n)
        dens += coef(basis.index(j, n)) * std::exp(kI * static_cast<double>(n) * t);
      g += quasi_remainder(x - y, mode, E).gradient * dens * cfg.R_D * (2.0 * kPi / Mq);
    }
  return g;
}

double quasi_refinement_gap(const MetascreenConfig& cfg, const QuasiMode& mode,
                            int N, double E) {
  const MatrixXc a = assemble_single_layer_quasi(cfg, mode, N, E);
  const MatrixXc b = assemble_single_layer_quasi(cfg, mode, N + 4, E);
  const BoundaryBasis ba{N}, bb{N + 4};
  double gap = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = -N; m <= N; ++m)
        for (int n = -N; n <= N; ++n)
          gap = std::max(gap, std::abs(a(ba.index(i, m), ba.index(j, n)) -
                                       b(bb.index(i, m), bb.index(j, n))));
  return gap;
}

void write_matrix_csv(std::ostream& os, const MatrixXc& m) {
  char buf[128];
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g,%.17g\n", static_cast<long>(r),
                    static_cast<long>(c), m(r, c).real(), m(r, c).imag());
      os << buf;
    }
}

MatrixXc read_matrix_csv(std::istream& is) {
  std::vector<std::tuple<long, long, double, double>> entries;
  long maxr = -1, maxc = -1;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    long r, c;
    double re, im;
    char comma;
    ls >> r >> comma >> c >> comma >> re >> comma >> im;
    entries.emplace_back(r, c, re, im);
    maxr = std::max(maxr, r);
    maxc = std::max(maxc, c);
  }
  MatrixXc m = MatrixXc::Zero(maxr + 1, maxc + 1);
  for (const auto& [r, c, re, im] : entries) m(r, c) = cplx{re, im};
  return m;
}

} // namespace metascreen

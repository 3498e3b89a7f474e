#include "metascreen/nystrom_oracle.hpp"

#include <cmath>

#include "metascreen/special_functions.hpp"

namespace metascreen::oracle {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kEulerGamma = 0.57721566490153286060651209008;
const cplx kI{0.0, 1.0};

void check_size(int M) {
  if (M < 128) throw std::invalid_argument("nystrom oracle: M must be >= 128");
  if (M > 4096) throw std::invalid_argument("nystrom oracle: M > 4096 refused (memory guard)");
  if (M % 2 != 0) throw std::invalid_argument("nystrom oracle: M must be even");
}

// Kress weights R_{|i-j|} for int_0^{2pi} ln(4 sin^2((s-t)/2)) f(t) dt on M
// equispaced nodes, M = 2n.
std::vector<double> kress_weights(int M) {
  const int n = M / 2;
  std::vector<double> R(static_cast<size_t>(M));
  for (int d = 0; d < M; ++d) {
    const double su = 2.0 * kPi * d / M;
    double acc = 0.0;
    for (int m = 1; m < n; ++m) acc += std::cos(m * su) / m;
    R[static_cast<size_t>(d)] = -(2.0 * kPi / n) * acc - (kPi / (n * n)) * std::cos(n * su);
  }
  return R;
}

struct Nodes {
  std::vector<Vec2> x;  // 2M points
  std::vector<Vec2> nu; // outward normals
  std::vector<double> t;
};

Nodes make_nodes(const MetascreenConfig& cfg, int M) {
  Nodes nd;
  const auto centers = disk_centers(cfg);
  nd.x.resize(static_cast<size_t>(2 * M));
  nd.nu.resize(static_cast<size_t>(2 * M));
  nd.t.resize(static_cast<size_t>(2 * M));
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < M; ++i) {
      const double t = 2.0 * kPi * i / M;
      const Vec2 e{std::cos(t), std::sin(t)};
      nd.x[static_cast<size_t>(j * M + i)] = centers[static_cast<size_t>(j)] + cfg.R_D * e;
      nd.nu[static_cast<size_t>(j * M + i)] = e;
      nd.t[static_cast<size_t>(j * M + i)] = t;
    }
  return nd;
}

// smooth extra term added on top of the free-space kernel (lattice remainder)
using ExtraS = std::function<cplx(const Vec2&)>;
using ExtraK = std::function<cplx(const Vec2&, const Vec2&)>; // (x-y, nu_x)

MatrixXc build_single_layer(const MetascreenConfig& cfg, cplx k, int M,
                            const ExtraS& extra) {
  check_size(M);
  const double R = cfg.R_D;
  const auto nd = make_nodes(cfg, M);
  const auto wts = kress_weights(M);
  const double wtrap = 2.0 * kPi / M;
  const bool is_static = (k == cplx{0.0, 0.0});

  MatrixXc S(2 * M, 2 * M);
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj)
      for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q) {
          const int row = bi * M + p, col = bj * M + q;
          const Vec2 diff = nd.x[static_cast<size_t>(row)] - nd.x[static_cast<size_t>(col)];
          cplx val;
          if (bi == bj) {
            // Kress split of the central image
            cplx A, B;
            if (p == q) {
              A = is_static ? cplx{1.0 / (4.0 * kPi), 0.0}
                            : cplx{1.0, 0.0} / (4.0 * kPi);
              B = is_static ? cplx{std::log(R) / (2.0 * kPi), 0.0}
                            : (std::log(k * R / 2.0) + kEulerGamma) / (2.0 * kPi) -
                                  0.25 * kI;
            } else {
              const double r = diff.norm();
              A = is_static ? cplx{1.0 / (4.0 * kPi), 0.0}
                            : sf::bessel_j(0, k * r) / (4.0 * kPi);
              const double ln4s =
                  std::log(4.0 * std::pow(std::sin((nd.t[static_cast<size_t>(row)] -
                                                    nd.t[static_cast<size_t>(col)]) /
                                                   2.0),
                                          2));
              B = greens_free(diff, k) - A * ln4s;
            }
            val = A * wts[static_cast<size_t>(std::abs(p - q))] + B * wtrap;
          } else {
            val = greens_free(diff, k) * wtrap;
          }
          if (extra) val += extra(diff) * wtrap;
          S(row, col) = val * R;
        }
  return S;
}

MatrixXc build_neumann_poincare(const MetascreenConfig& cfg, cplx k, int M,
                                const ExtraK& extra) {
  check_size(M);
  const double R = cfg.R_D;
  const auto nd = make_nodes(cfg, M);
  const auto wts = kress_weights(M);
  const double wtrap = 2.0 * kPi / M;
  const bool is_static = (k == cplx{0.0, 0.0});

  MatrixXc Kst(2 * M, 2 * M);
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj)
      for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q) {
          const int row = bi * M + p, col = bj * M + q;
          const Vec2 diff = nd.x[static_cast<size_t>(row)] - nd.x[static_cast<size_t>(col)];
          const Vec2 nu = nd.nu[static_cast<size_t>(row)];
          cplx val;
          if (bi == bj) {
            cplx A, B;
            if (p == q) {
              A = 0.0;
              B = cplx{1.0 / (4.0 * kPi * R), 0.0};
            } else {
              const double r = diff.norm();
              const double proj = diff.dot(nu) / r;
              A = is_static ? cplx{0.0, 0.0}
                            : -(k / (4.0 * kPi)) * sf::bessel_j(1, k * r) * proj;
              const double ln4s =
                  std::log(4.0 * std::pow(std::sin((nd.t[static_cast<size_t>(row)] -
                                                    nd.t[static_cast<size_t>(col)]) /
                                                   2.0),
                                          2));
              const Vec2c g = greens_free_grad(diff, k);
              B = (nu.x() * g.x() + nu.y() * g.y()) - A * ln4s;
            }
            val = A * wts[static_cast<size_t>(std::abs(p - q))] + B * wtrap;
          } else {
            const Vec2c g = greens_free_grad(diff, k);
            val = (nu.x() * g.x() + nu.y() * g.y()) * wtrap;
          }
          if (extra) val += extra(diff, nu) * wtrap;
          Kst(row, col) = val * R;
        }
  return Kst;
}

} // namespace

double node_weight(const MetascreenConfig& cfg, int M) {
  return cfg.R_D * 2.0 * kPi / M;
}

MatrixXc single_layer_free(const MetascreenConfig& cfg, cplx k, int M) {
  return build_single_layer(cfg, k, M, nullptr);
}

MatrixXc neumann_poincare_free(const MetascreenConfig& cfg, cplx k, int M) {
  return build_neumann_poincare(cfg, k, M, nullptr);
}

MatrixXc single_layer_quasi(const MetascreenConfig& cfg, const QuasiMode& mode,
                            int M, double E) {
  if (E <= 0.0) E = default_ewald_parameter(cfg.L);
  return build_single_layer(cfg, mode.k, M, [&](const Vec2& d) {
    return quasi_remainder(d, mode, E).value;
  });
}

MatrixXc neumann_poincare_quasi(const MetascreenConfig& cfg, const QuasiMode& mode,
                                int M, double E) {
  if (E <= 0.0) E = default_ewald_parameter(cfg.L);
  return build_neumann_poincare(cfg, mode.k, M, [&](const Vec2& d, const Vec2& nu) {
    const Vec2c g = quasi_remainder(d, mode, E).gradient;
    return nu.x() * g.x() + nu.y() * g.y();
  });
}

MatrixXc single_layer_periodic_static(const MetascreenConfig& cfg, int M) {
  return build_single_layer(cfg, cplx{0.0, 0.0}, M, [&](const Vec2& d) {
    return periodic_static_remainder(d, cfg.L).value;
  });
}

PeriodicOracle capacitance_periodic(const MetascreenConfig& cfg, int M) {
  const MatrixXc S = single_layer_periodic_static(cfg, M);
  const double w = node_weight(cfg, M);
  const int dim = 2 * M;
  MatrixXc B = MatrixXc::Zero(dim + 1, dim + 1);
  B.topLeftCorner(dim, dim) = S;
  B.topRightCorner(dim, 1) = VectorXc::Ones(dim);
  B.bottomLeftCorner(1, dim) = RowVectorXc::Constant(dim, cplx{w, 0.0});
  VectorXc rhs = VectorXc::Zero(dim + 1);
  rhs.head(M) = VectorXc::Constant(M, cplx{0.5, 0.0});
  rhs.segment(M, M) = VectorXc::Constant(M, cplx{-0.5, 0.0});
  const VectorXc sol = B.partialPivLu().solve(rhs);
  PeriodicOracle out;
  out.psi1 = sol.head(dim);
  out.C11_0 = -(w * out.psi1.head(M).sum()).real();
  const auto nd = make_nodes(cfg, M);
  Vec2 c = Vec2::Zero();
  for (int i = 0; i < dim; ++i)
    c += w * nd.x[static_cast<size_t>(i)] * out.psi1(i).real();
  out.dipole = c;
  return out;
}

Eigen::Matrix2cd capacitance_quasi(const MetascreenConfig& cfg, double alpha, int M) {
  const MatrixXc S =
      single_layer_quasi(cfg, QuasiMode::fixed(alpha, cplx{0.0, 0.0}, cfg.L), M);
  Eigen::PartialPivLU<MatrixXc> lu(S);
  const double w = node_weight(cfg, M);
  Eigen::Matrix2cd C;
  for (int j = 0; j < 2; ++j) {
    VectorXc chi = VectorXc::Zero(2 * M);
    chi.segment(j * M, M).setOnes();
    const VectorXc psi = lu.solve(chi);
    for (int i = 0; i < 2; ++i) C(i, j) = -w * psi.segment(i * M, M).sum();
  }
  return C;
}

ScatteringResult solve_scattering(const MetascreenConfig& cfg, const Incidence& inc,
                                  double delta, double omega, int M) {
  const auto nd = make_nodes(cfg, M);
  const double w = node_weight(cfg, M);
  const cplx kb = omega / cfg.v_b;
  const QuasiMode mode = QuasiMode::slaved(inc.alpha0, omega, cfg.L);

  const MatrixXc Sf = single_layer_free(cfg, kb, M);
  const MatrixXc Kf = neumann_poincare_free(cfg, kb, M);
  const MatrixXc Sq = single_layer_quasi(cfg, mode, M);
  const MatrixXc Kq = neumann_poincare_quasi(cfg, mode, M);

  const int dim = 2 * M;
  Eigen::PartialPivLU<MatrixXc> Sf_lu(Sf.transpose());
  const MatrixXc T1 =
      Sf_lu.solve((-0.5 * MatrixXc::Identity(dim, dim) + Kf).transpose()).transpose();
  Eigen::PartialPivLU<MatrixXc> Sq_lu_t(Sq.transpose());
  const MatrixXc T2 =
      Sq_lu_t.solve((0.5 * MatrixXc::Identity(dim, dim) + Kq).transpose()).transpose();
  const MatrixXc A = T1 - delta * T2;

  const Vec2 kvec_up{omega * inc.alpha0, omega * inc.w_perp()};
  VectorXc uin(dim), duin(dim);
  for (int i = 0; i < dim; ++i) {
    const Vec2& x = nd.x[static_cast<size_t>(i)];
    const Vec2& nu = nd.nu[static_cast<size_t>(i)];
    uin(i) = std::exp(kI * (kvec_up.x() * x.x() + kvec_up.y() * x.y()));
    duin(i) = kI * (kvec_up.x() * nu.x() + kvec_up.y() * nu.y()) * uin(i);
  }
  const VectorXc F = delta * duin - T1 * uin;
  const VectorXc eta = A.partialPivLu().solve(F);
  const VectorXc psi = Sq.partialPivLu().solve(eta);

  const double k3 = omega * inc.w_perp();
  const cplx pref = 1.0 / (2.0 * kI * k3 * cfg.L);
  cplx up = 0.0, down = 0.0;
  for (int i = 0; i < dim; ++i) {
    const Vec2& x = nd.x[static_cast<size_t>(i)];
    up += std::exp(-kI * (kvec_up.x() * x.x() + kvec_up.y() * x.y())) * psi(i) * w;
    down += std::exp(-kI * (kvec_up.x() * x.x() - kvec_up.y() * x.y())) * psi(i) * w;
  }
  ScatteringResult out;
  out.omega = omega;
  out.t = 1.0 + pref * up;
  out.r = pref * down;
  out.T = std::norm(out.t);
  out.R = std::norm(out.r);
  out.method = ScatteringMethod::numeric;
  out.residual = (A * eta - F).norm() / F.norm();
  return out;
}

cplx eval_single_layer_quasi(const MetascreenConfig& cfg, const QuasiMode& mode,
                             const VectorXc& density, const Vec2& x, double E) {
  if (E <= 0.0) E = default_ewald_parameter(cfg.L);
  const int M = static_cast<int>(density.size()) / 2;
  const auto nd = make_nodes(cfg, M);
  const double w = node_weight(cfg, M);
  cplx val = 0.0;
  for (int i = 0; i < 2 * M; ++i) {
    const Vec2 d = x - nd.x[static_cast<size_t>(i)];
    val += (greens_free(d, mode.k) + quasi_remainder(d, mode, E).value) *
           density(i) * w;
  }
  return val;
}

} // namespace metascreen::oracle

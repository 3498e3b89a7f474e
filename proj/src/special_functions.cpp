#include "metascreen/special_functions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace metascreen::sf {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008;
constexpr double kPi = 3.14159265358979323846264338328;
const cplx kI{0.0, 1.0};

constexpr double kSeriesRadius = 12.0;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// psi(k+1) = -gamma + H_k
double digamma_int(int kp1) {
  double h = 0.0;
  for (int j = 1; j < kp1; ++j) h += 1.0 / j;
  return -kEulerGamma + h;
}

cplx bessel_j_series(int n, cplx z) {
  // J_n(z) = (z/2)^n sum_k (-z^2/4)^k / (k! (n+k)!)
  const cplx half = 0.5 * z;
  const cplx m4 = -half * half;
  cplx term = 1.0 / factorial(n);
  cplx sum = term;
  for (int k = 1; k < 80; ++k) {
    term *= m4 / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) && k > 4) break;
  }
  return std::pow(half, n) * sum;
}

cplx bessel_y_series(int n, cplx z) {
  // DLMF 10.8.1, principal log branch.
  const cplx half = 0.5 * z;
  const cplx lg = std::log(half);
  cplx finite_sum = 0.0;
  if (n > 0) {
    const cplx z24 = half * half;
    cplx p = std::pow(half, -n);
    for (int k = 0; k <= n - 1; ++k) {
      finite_sum += p * factorial(n - k - 1) / factorial(k);
      p *= z24;
    }
  }
  cplx series = 0.0;
  {
    const cplx m4 = -half * half;
    cplx pw = std::pow(half, n) / factorial(n);
    for (int k = 0; k < 80; ++k) {
      const cplx term = (digamma_int(k + 1) + digamma_int(n + k + 1)) * pw;
      series += term;
      pw *= m4 / (static_cast<double>(k + 1) * (n + k + 1));
      if (std::abs(pw) < 1e-18 * (std::abs(series) + 1e-300) && k > 4) break;
    }
  }
  return (2.0 / kPi) * lg * bessel_j_series(n, z) - finite_sum / kPi -
         series / kPi;
}

// Hankel asymptotic expansion pieces P(n,z), Q(n,z); |z| large.
void hankel_pq(int n, cplx z, cplx& p, cplx& q) {
  const double mu = 4.0 * n * n;
  cplx term = 1.0;
  p = 1.0;
  q = 0.0;
  const cplx z8 = 8.0 * z;
  for (int k = 1; k <= 14; ++k) {
    term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (static_cast<double>(k) * z8);
    if (k % 4 == 1) q += term;
    else if (k % 4 == 2) p -= term;
    else if (k % 4 == 3) q -= term;
    else p += term;
    if (std::abs(term) < 1e-17) break;
  }
}

cplx bessel_j_asym(int n, cplx z) {
  cplx p, q;
  hankel_pq(n, z, p, q);
  const cplx chi = z - (0.5 * n + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * z)) * (p * std::cos(chi) - q * std::sin(chi));
}

cplx bessel_y_asym(int n, cplx z) {
  cplx p, q;
  hankel_pq(n, z, p, q);
  const cplx chi = z - (0.5 * n + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * z)) * (p * std::sin(chi) + q * std::cos(chi));
}

// Weideman (1994) rational approximation, N = 48 terms; relative error below
// 5e-16 on the closed upper half-plane.
constexpr double kWeidemanL = 5.825901260487881;
constexpr std::array<double, 48> kWeidemanA = {
    -3.70074341541718826e-17, 3.90809708090504099e-17, 8.91304535964125145e-17,
    4.33646987676311602e-17,  2.10357809007447985e-17, 7.06831347963979208e-20,
    3.85910504816624698e-16,  7.25379754852292609e-16, -1.87923282206915558e-15,
    -5.23915859509534328e-15, 9.52753636075451554e-15, 4.23425555842355866e-14,
    -3.19334159628465632e-14, -3.22775731097254591e-13, -9.65501738984251051e-14,
    2.21541877720001645e-12,  3.42533409044184144e-12, -1.19354512668394108e-11,
    -4.38658676752703712e-11, 2.16220023479657394e-11, 3.87942207730320342e-10,
    5.77528985547910890e-10,  -2.01565992731615496e-09, -9.59625471307884432e-09,
    -6.38680992890150548e-09, 6.92700063602607607e-08, 2.65494920068709391e-07,
    1.94943374672414598e-07,  -1.94456577900989678e-06, -9.47563824045082754e-06,
    -1.90544616191120193e-05, 1.75063163711175849e-05, 3.07869136408890425e-04,
    1.48649912519561826e-03,  5.12581354822568610e-03, 1.45468377922374024e-02,
    3.58613699833766827e-02,  7.89558955347000463e-02, 1.57863304433804696e-01,
    2.89799890796048121e-01,  4.92257023913990566e-01, 7.78062419148422779e-01,
    1.14922046453977811e+00,  1.59130846911780033e+00, 2.07075997167429149e+00,
    2.53704848744469036e+00,  2.93044989562375635e+00, 3.19406458939507099e+00};

} // namespace

cplx bessel_j(int n, cplx z) {
  const int m = std::abs(n);
  cplx v = (std::abs(z) <= kSeriesRadius) ? bessel_j_series(m, z)
                                          : bessel_j_asym(m, z);
  if (n < 0 && (m & 1)) v = -v;
  return v;
}

cplx bessel_y(int n, cplx z) {
  if (z == cplx{0.0, 0.0}) throw std::domain_error("bessel_y: z = 0");
  const int m = std::abs(n);
  cplx v = (std::abs(z) <= kSeriesRadius) ? bessel_y_series(m, z)
                                          : bessel_y_asym(m, z);
  if (n < 0 && (m & 1)) v = -v;
  return v;
}

cplx hankel1(int n, cplx z) { return bessel_j(n, z) + kI * bessel_y(n, z); }

cplx bessel_j_deriv(int n, cplx z) {
  return 0.5 * (bessel_j(n - 1, z) - bessel_j(n + 1, z));
}

cplx hankel1_deriv(int n, cplx z) {
  return 0.5 * (hankel1(n - 1, z) - hankel1(n + 1, z));
}

cplx faddeeva_w(cplx z) {
  if (z.imag() < 0.0)
    throw std::domain_error("faddeeva_w: requires Im z >= 0");
  const cplx iz = kI * z;
  const cplx lmiz = kWeidemanL - iz;
  const cplx zz = (kWeidemanL + iz) / lmiz;
  cplx p = 0.0;
  for (const double a : kWeidemanA) p = p * zz + a;
  return 2.0 * p / (lmiz * lmiz) + (1.0 / std::sqrt(kPi)) / lmiz;
}

cplx erfc_c(cplx z) {
  if (z.imag() == 0.0) return cplx{std::erfc(z.real()), 0.0};
  if (z.real() < 0.0) return 2.0 - erfc_c(-z);
  return std::exp(-z * z) * faddeeva_w(kI * z);
}

double expint_e1(double x) {
  if (x <= 0.0) throw std::domain_error("expint_e1: requires x > 0");
  if (x <= 1.0) {
    double sum = -kEulerGamma - std::log(x);
    double term = 1.0;
    for (int k = 1; k <= 30; ++k) {
      term *= -x / k;
      sum -= term / k;
      if (std::abs(term) < 1e-18) break;
    }
    return sum;
  }
  // modified Lentz continued fraction: E1 = e^{-x} / (x + 1/(1 + 1/(x + 2/(1 + ...))))
  const double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 200; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = a * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

std::vector<double> expint_sequence(int nmax, double x) {
  std::vector<double> v(static_cast<size_t>(nmax));
  if (nmax <= 0) return v;
  v[0] = expint_e1(x);
  const double ex = std::exp(-x);
  for (int n = 1; n < nmax; ++n) v[n] = (ex - x * v[n - 1]) / n;
  return v;
}

} // namespace metascreen::sf

#pragma once

#include <complex>
#include <vector>

// Complex-argument cylinder functions, the Faddeeva function and exponential
// integrals. Everything here is self-contained: the standard library only
// provides real-argument Bessel functions, while the lattice sums and the
// characteristic-value search need J_n, Y_n, H^(1)_n at complex argument.

namespace metascreen::sf {

using cplx = std::complex<double>;

// Bessel functions of integer order at complex argument. Ascending series for
// |z| <= 12, Hankel large-argument expansion beyond. Principal branch of
// log(z/2) in Y_n; callers that need analytic continuation across the negative
// real axis must be consistent about which side they evaluate on.
cplx bessel_j(int n, cplx z);
cplx bessel_y(int n, cplx z);
cplx hankel1(int n, cplx z);

cplx bessel_j_deriv(int n, cplx z);
cplx hankel1_deriv(int n, cplx z);

// Faddeeva function w(z) = exp(-z^2) erfc(-iz), valid for Im z >= 0.
cplx faddeeva_w(cplx z);

// erfc at complex argument (any z).
cplx erfc_c(cplx z);

// Exponential integrals E_1(x),...,E_nmax(x) for real x > 0, by upward
// recurrence from E_1. Returns vector v with v[k] = E_{k+1}(x).
std::vector<double> expint_sequence(int nmax, double x);

double expint_e1(double x);

} // namespace metascreen::sf

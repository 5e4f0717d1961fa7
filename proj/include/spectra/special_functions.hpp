#pragma once

#include <complex>
#include <vector>

#include "spectra/complex_order.hpp"

namespace spectra {

/// log Gamma(z) for complex z (principal branch), Lanczos approximation
/// with reflection for Re z < 0.5. Accurate to ~1e-14 relative away from
/// the poles at non-positive integers.
std::complex<double> log_gamma(std::complex<double> z);

/// Bessel function of the first kind J_mu(x) for complex order mu and
/// real argument x >= 0. Ascending series for small x, backward (Miller)
/// recurrence for moderate x, large-x asymptotics with one correction
/// term beyond x > max(30, 2|mu|^2). Satisfies the conjugate symmetry
/// J_{conj(mu)}(x) == conj(J_mu(x)).
EvalResult bessel_j(const ComplexOrder& order, double x);

/// The product J_mu(x) J_{-mu}(x) evaluated by quadrature of its
/// Nicholson-type integral representation,
///   (2/pi) * int_0^{pi/2} J_0(2 x cos t) cos(2 mu t) dt.
/// Cross-validation oracle for bessel_j; quad_points >= 16.
std::complex<double> bessel_product_nicholson(const ComplexOrder& order, double x,
                                              int quad_points);

/// Airy function Ai(t). Maclaurin pair series (extended-precision
/// accumulation) for |t| <= 9, asymptotic expansions beyond. Absolute
/// accuracy better than 1e-10 for |t| <= 20.
double airy_ai(double t);

/// Legendre function P_degree(z) on z in [-1,1] for complex degree, via
/// the hypergeometric series in (1-z)/2. Convergence degrades near
/// z = -1; the series is capped at 10^4 terms and est_error reports the
/// last term magnitude.
EvalResult legendre_p(const ComplexOrder& degree, double z);

/// J_0(x), ..., J_nmax(x) for integer orders, by backward recurrence
/// with the J_0 + 2*sum J_2k = 1 normalization. Independent of the
/// complex-order path; backbone of the brute-force series oracles.
/// Use J_{-n} = (-1)^n J_n for negative orders.
std::vector<double> bessel_jn_array(int nmax, double x);

/// J_n(x) for a single integer order (any sign), via bessel_jn_array.
double bessel_jn(int n, double x);

}  // namespace spectra

#pragma once

#include <complex>

#include "spectra/complex_order.hpp"

namespace spectra {

/// Integer-shift summation spec for
///   sum_n J_{n+p}(x) J_{n-q}(x) / (n + mu).
/// Convergence requires p + q > -1 and mu not a real integer.
struct SumSpec {
    int p = 0;
    int q = 0;
    ComplexOrder mu;
    double x = 0.0;
};

/// General-form summation spec for
///   sum_n (-1)^n J_{alpha + stride*n}(x) J_{beta - stride*n}(x) / (n + mu),
/// with Re(alpha + beta) > -1 and stride in (0, 1]. The stride parameter
/// is the formula's gamma, renamed to avoid clashing with decay rates.
struct GeneralSumSpec {
    std::complex<double> alpha;
    std::complex<double> beta;
    double stride = 1.0;
    ComplexOrder mu;
    double x = 0.0;
};

/// Closed form (-1)^q * (pi / sin(pi mu)) * J_{p-mu}(x) * J_{q+mu}(x).
std::complex<double> sum_exact(const SumSpec& spec);

/// Brute-force truncated evaluation of the same series with adaptive
/// window; the independent oracle for sum_exact and everything downstream.
EvalResult sum_series(const SumSpec& spec, double rel_tol);

/// Closed form (pi / sin(pi mu)) * J_{alpha - stride*mu}(x) * J_{beta + stride*mu}(x).
std::complex<double> sum_exact_general(const GeneralSumSpec& spec);

/// Closed form of sum_n (-1)^n cos(n phi) / (n + mu) = pi cos(mu phi) / sin(pi mu),
/// for |phi| <= pi.
std::complex<double> cosine_sum(const ComplexOrder& mu, double phi);

/// The resummation kernel (pi / sin(pi mu)) * J_mu(x) * J_{-mu}(x), the
/// p = q = 0 case that every rate and power spectrum reduces to. Uses the
/// small-amplitude product expansion near x = 0 where the two factors are
/// separately singular/vanishing.
std::complex<double> newberger_product(const ComplexOrder& mu, double x);

/// pi / sin(pi z), guarded against overflow for large |Im z|.
std::complex<double> pi_over_sin_pi(std::complex<double> z);

/// Default adaptive truncation window: Bessel decay past the turning
/// point n ~ x dominates the 1/n Lorentzian tail.
int series_window(double x, double abs_mu);

}  // namespace spectra

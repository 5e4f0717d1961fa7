#pragma once

#include <complex>

#include "spectra/complex_order.hpp"

namespace spectra {

/// Periodically driven qubit near an avoided crossing. Physical inputs;
/// all internal math runs on the dimensionless triple
///   eps = bias/omega, gam = gamma2/omega, x = amplitude/omega.
struct DrivenQubit {
    double delta = 1.0;      // energy gap (same units as omega)
    double bias = 0.0;       // static energy detuning
    double gamma2 = 0.0;     // decoherence rate
    double omega = 1.0;      // drive angular frequency, > 0
    double amplitude = 0.0;  // drive amplitude, >= 0

    double eps() const { return bias / omega; }
    double gam() const { return gamma2 / omega; }
    double x() const { return amplitude / omega; }
    ComplexOrder mu() const { return {eps(), gam()}; }
    void validate() const;
};

enum class RateMethod { Series, Exact, AiryApprox, AiryAsym, Asymptotic, SmallX };

/// Transition rate in units of delta^2 / omega.
struct RateValue {
    double value = 0.0;
    RateMethod method = RateMethod::Exact;
};

/// Brute-force truncated multiphoton series,
///   W = (1/2) sum_n gam J_n^2(x) / ((eps - n)^2 + gam^2).
RateValue rate_series(const DrivenQubit& q, double rel_tol);

/// Exact closed form W = -(1/2) Im[(pi / sin(pi mu)) J_mu(x) J_{-mu}(x)].
RateValue rate_exact(const DrivenQubit& q);

/// Exact zero-amplitude value W(x=0) = gam / (2 |mu|^2).
RateValue rate_zero_amplitude(const DrivenQubit& q);

/// Legacy Airy-based approximation (comparison only; vanishes at the Ai
/// zeros while the exact rate never does).
RateValue rate_airy_approx(const DrivenQubit& q);

/// Large-amplitude limit of the Airy approximation; its oscillation
/// frequency in x is 4 sqrt(2)/3 rather than the exact rate's 2.
RateValue rate_airy_asym(const DrivenQubit& q);

/// Large-amplitude asymptotics of the exact rate,
///   W = (1/x) sinh(pi gam)/(cosh(2 pi gam) - cos(2 pi eps))
///       * (cosh(pi gam) + cos(pi eps) sin(2x)).
RateValue rate_asym(const DrivenQubit& q);

/// Per-period envelope extrema of the asymptotic rate; first is the
/// larger value. Degenerate when cos(pi eps) = 0.
std::pair<RateValue, RateValue> rate_extrema(const DrivenQubit& q);

/// Exact rate at the integer resonance eps = n, via the
/// (pi / sinh(pi gam)) Re[J_{n+i gam} J_{-n-i gam}] rewriting.
RateValue rate_resonance(int n, const DrivenQubit& q);

/// Small-amplitude expansion through order x^(2 m_max); m_max = 0
/// reproduces rate_zero_amplitude.
RateValue rate_small_x(const DrivenQubit& q, int m_max);

/// Double-passage upper-level occupation probability in the fast-passage
/// limit, 2 pi delta^2/(omega A) sin^2(x - pi eps/2 - pi/4).
double double_passage_prob(const DrivenQubit& q);

enum class FourierMethod { Closed, GrafSeries, Quadrature };

/// Fourier transform of W over the bias at fixed amplitude,
///   (pi delta^2 / 2) exp(-gamma2 |k_E|) J_0(2 x |sin(omega k_E / 2)|).
double fourier_in_bias(const DrivenQubit& q, double k_E, FourierMethod method);

enum class SupportStatus { Inside, OutsideSupport, Boundary };

struct FourierDoubleResult {
    double value = 0.0;
    SupportStatus status = SupportStatus::Inside;
};

/// Double Fourier transform over bias and amplitude,
///   pi delta^2 exp(-gamma2 |k_E|) / sqrt((4/omega^2) sin^2(omega k_E/2) - k_A^2),
/// supported where the radicand is positive.
FourierDoubleResult fourier_double(const DrivenQubit& q, double k_E, double k_A);

/// Fourier transform over the amplitude of the resummation kernel:
///   (pi / sin(pi mu)) P_{mu-1/2}(k_x^2/2 - 1) on 0 <= k_x <= 2,
/// identically zero outside (compact support).
std::complex<double> fourier_in_amplitude(const DrivenQubit& q, double k_x);

}  // namespace spectra

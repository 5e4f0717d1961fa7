#pragma once

#include <complex>
#include <vector>

#include "spectra/complex_order.hpp"

namespace spectra {

/// SAW-modulated quantum dot: two-level emitter whose transition
/// frequency is modulated at omega_s with dimensionless index chi.
struct SawDrive {
    double omega0 = 0.0;   // QD transition angular frequency
    double omega_s = 1.0;  // SAW angular frequency, > 0
    double chi = 0.0;      // modulation index, >= 0
    double gamma = 1.0;    // half linewidth, > 0

    void validate() const;
};

/// Laser dipole-coupled to the SAW-modulated dot; mu = zeta + i eta.
struct LaserCoupling {
    double omega_L = 0.0;  // laser angular frequency
    double zeta = 0.0;     // (omega_L - omega0) / omega_s
    double eta = 1.0;      // gamma / omega_s, > 0

    ComplexOrder mu() const { return {zeta, eta}; }
    void validate() const;
};

/// Discrete delta-comb spectrum: (frequency, weight) pairs with strictly
/// increasing frequencies, plus the reported bound on truncated lines.
struct SpectralLine {
    double frequency = 0.0;
    double weight = 0.0;
};

struct LineSpectrum {
    std::vector<SpectralLine> lines;
    double tail_bound = 0.0;
};

/// Amplitude-modulated resonant laser field (strong carrier at the
/// atomic resonance plus two weak sidebands at +- omega1).
struct ModulatedField {
    double Omega0 = 1.0;  // Rabi frequency of the resonant component
    double omega1 = 1.0;  // modulation angular frequency, > 0
    double a = 0.0;       // sideband amplitude ratio
    double gamma = 0.0;   // spontaneous decay rate

    ComplexOrder rho() const { return {Omega0 / omega1, 0.75 * gamma / omega1}; }
    double bessel_arg() const { return std::abs(a) * Omega0 / omega1; }
    void validate() const;
};

/// Asymmetric quantum dot driven by a bichromatic field with resonance
/// condition omega0 +- omega2 = n * omega1.
struct BichromaticDot {
    double d11 = 0.0, d22 = 0.0, d12 = 1.0;  // dipole matrix elements
    double E1 = 0.0, E2 = 0.0;               // field amplitudes
    double omega1 = 1.0, omega2 = 0.0, omega0 = 0.0;
    int n = 0;            // resonant mode index
    double gamma = 0.0;   // spontaneous emission rate
    double deltaS = 0.0;  // spectral asymmetry parameter, user supplied
    int sign = +1;        // branch of the +- resonance condition

    double omega_tilde() const { return E1 * (d22 - d11); }
    double x() const { return omega_tilde() / omega1; }
    double rabi_f() const;    // F_n
    double phi_n() const;     // resonance detuning
    double big_omega() const; // Omega_n
    double gamma11() const;
    double gamma12() const;
    void validate() const;
};

/// Exact SAW fluorescence power spectrum,
///   P[omega] = -(1/(gamma omega_s)) Im[(pi/sin(pi nu)) J_nu(chi) J_{-nu}(chi)],
/// nu = (omega - omega0 + i gamma)/omega_s.
double power_spectrum_exact(const SawDrive& d, double omega);

/// Brute-force Lorentzian-comb series for the same spectrum.
double power_spectrum_series(const SawDrive& d, double omega, double rel_tol);

/// Series truncated to a fixed index window around the dominant
/// resonance (n0 and n0 +- half_width); sensitivity probe.
double power_spectrum_truncated(const SawDrive& d, double omega, int n0, int half_width);

/// Large-chi trigonometric asymptotics of the exact spectrum.
double power_spectrum_asym(const SawDrive& d, double omega);

/// Laser-coupled sideband line spectrum: lines at omega_L - ell*omega_s
/// with the closed-form Newberger weights, |ell| <= ell_max.
LineSpectrum sideband_lines(const SawDrive& d, const LaserCoupling& lc, int ell_max);

/// Large-chi sideband weights: one shared weight for the even sector and
/// one per odd branch.
LineSpectrum sideband_lines_asym(const SawDrive& d, const LaserCoupling& lc, int ell_max);

/// Coherently scattered line spectrum of the modulated field, at
/// omega_L - k*omega1 with weights pi^3 gamma^2/(8 omega1^2) * a_k / b_k.
LineSpectrum coherent_lines(const ModulatedField& f, double omega_L, int k_max);

/// One harmonic of the steady-state atomic inversion z(t).
struct InversionHarmonic {
    int k = 0;
    double beta = 0.0;                  // real harmonic as printed
    std::complex<double> amplitude{};   // complex amplitude c_k; z(t) = Im sum c_k e^{-i k w1 t}
};

/// Harmonics beta_k of the atomic inversion for k in [-k_max, k_max],
/// with the complex amplitudes that satisfy the Bessel three-term
/// recurrence (for k != 0).
std::vector<InversionHarmonic> inversion_harmonics(const ModulatedField& f, int k_max);

/// Bichromatic inelastic power spectrum: an infinite set of Mollow
/// triplets resummed into three complex-order Bessel products.
double mollow_spectrum(const BichromaticDot& dot, double omega);

/// The same spectrum as a brute-force triple Lorentzian-comb sum
/// (oracle; window terms on each side of the turning point).
double mollow_spectrum_series(const BichromaticDot& dot, double omega);

}  // namespace spectra

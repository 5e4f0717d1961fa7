#include "spectra/qd_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spectra/newberger.hpp"
#include "spectra/special_functions.hpp"

namespace spectra {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
using cplx = std::complex<double>;

cplx bj(const cplx& order, double x) { return bessel_j(ComplexOrder(order), x).value; }

}  // namespace

void SawDrive::validate() const {
    if (!(omega_s > 0.0)) throw std::domain_error("SawDrive: omega_s must be > 0");
    if (!(gamma > 0.0)) throw std::domain_error("SawDrive: gamma must be > 0");
    if (chi < 0.0) throw std::domain_error("SawDrive: chi must be >= 0");
}

void LaserCoupling::validate() const {
    if (!(eta > 0.0)) throw std::domain_error("LaserCoupling: eta must be > 0");
}

void ModulatedField::validate() const {
    if (!(omega1 > 0.0)) throw std::domain_error("ModulatedField: omega1 must be > 0");
    if (gamma < 0.0) throw std::domain_error("ModulatedField: gamma must be >= 0");
}

double BichromaticDot::rabi_f() const {
    return -(d12 * E2 / 2.0) * bessel_jn(n, x());
}

double BichromaticDot::phi_n() const {
    return omega0 + sign * omega2 - double(n) * omega1;
}

double BichromaticDot::big_omega() const {
    return std::hypot(0.5 * phi_n(), rabi_f());
}

double BichromaticDot::gamma11() const {
    const double r = phi_n() / (2.0 * big_omega());
    return 0.5 * gamma * (1.0 + r * r);
}

double BichromaticDot::gamma12() const {
    const double r = phi_n() / (2.0 * big_omega());
    return 0.25 * gamma * (3.0 - r * r);
}

void BichromaticDot::validate() const {
    if (!(omega1 > 0.0)) throw std::domain_error("BichromaticDot: omega1 must be > 0");
    if (!(gamma >= 0.0)) throw std::domain_error("BichromaticDot: gamma must be >= 0");
    if (deltaS < 0.0 || deltaS >= 1.0)
        throw std::domain_error("BichromaticDot: deltaS must be in [0, 1)");
    if (sign != 1 && sign != -1) throw std::domain_error("BichromaticDot: sign must be +-1");
    if (!(big_omega() > 0.0))
        throw std::domain_error("BichromaticDot: degenerate dressing, Omega_n must be > 0");
}

double power_spectrum_exact(const SawDrive& d, double omega) {
    d.validate();
    const ComplexOrder nu((omega - d.omega0) / d.omega_s, d.gamma / d.omega_s);
    require_non_integer(nu, "power_spectrum_exact");
    return -(1.0 / (d.gamma * d.omega_s)) * newberger_product(nu, d.chi).imag();
}

double power_spectrum_series(const SawDrive& d, double omega, double rel_tol) {
    d.validate();
    if (rel_tol < 1e-14) throw std::domain_error("power_spectrum_series: rel_tol must be >= 1e-14");
    const double det = omega - d.omega0;
    const ComplexOrder nu(det / d.omega_s, d.gamma / d.omega_s);
    require_non_integer(nu, "power_spectrum_series");
    int N = series_window(d.chi, nu.abs());
    for (;;) {
        if (N > 1000000)
            throw AccuracyError("power_spectrum_series: window exceeded 1e6 terms", 0.0);
        std::vector<double> j = bessel_jn_array(N, d.chi);
        double sum = 0.0;
        for (int n = -N; n <= N; ++n) {
            double jn = j[std::abs(n)];
            double de = det + double(n) * d.omega_s;
            sum += jn * jn / (d.gamma * d.gamma + de * de);
        }
        double jN = j[N];
        double tail = 4.0 * jN * jN / (d.gamma * d.gamma);
        if (tail <= rel_tol * sum) return sum;
        N *= 2;
    }
}

double power_spectrum_truncated(const SawDrive& d, double omega, int n0, int half_width) {
    d.validate();
    if (half_width < 0) throw std::domain_error("power_spectrum_truncated: half_width must be >= 0");
    const double det = omega - d.omega0;
    double sum = 0.0;
    for (int n = n0 - half_width; n <= n0 + half_width; ++n) {
        double jn = bessel_jn(n, d.chi);
        double de = det + double(n) * d.omega_s;
        sum += jn * jn / (d.gamma * d.gamma + de * de);
    }
    return sum;
}

double power_spectrum_asym(const SawDrive& d, double omega) {
    d.validate();
    if (!(d.chi > 0.0)) throw std::domain_error("power_spectrum_asym: requires chi > 0");
    const double det = (omega - d.omega0) / d.omega_s;
    const double eta = d.gamma / d.omega_s;
    if (near_integer(ComplexOrder(det, 0.0)) && eta == 0.0)
        throw PoleError("power_spectrum_asym: integer detuning at zero linewidth",
                        std::lround(det));
    const double b = std::sinh(kPi * eta) / (std::cosh(2.0 * kPi * eta) - std::cos(2.0 * kPi * det));
    return 2.0 / (d.chi * d.gamma * d.omega_s) * b *
           (std::cosh(kPi * eta) + std::cos(kPi * det) * std::sin(2.0 * d.chi));
}

LineSpectrum sideband_lines(const SawDrive& d, const LaserCoupling& lc, int ell_max) {
    d.validate();
    lc.validate();
    if (ell_max < 1) throw std::domain_error("sideband_lines: ell_max must be >= 1");
    const ComplexOrder mu = lc.mu();
    require_non_integer(mu, "sideband_lines");
    const double ws2 = d.omega_s * d.omega_s;

    LineSpectrum out;
    if (d.chi == 0.0) {
        // Double sum collapses to the n = 0 inner term: one line at the
        // laser frequency with weight 1/(gamma^2 + (omega_L - omega0)^2).
        out.lines.push_back({lc.omega_L, std::norm(1.0 / mu.value()) / ws2});
        out.tail_bound = 0.0;
        return out;
    }

    const cplx pss = pi_over_sin_pi(mu.value());
    const double pref_plus = std::norm(pss * bj(mu.value(), d.chi)) / ws2;
    const double pref_minus = std::norm(pss * bj(-mu.value(), d.chi)) / ws2;
    auto weight = [&](int ell) {
        // ell >= 0: line at omega_L - ell*omega_s; ell < 0 is the
        // P_- branch at omega_L + |ell|*omega_s.
        return ell >= 0 ? pref_plus * std::norm(bj(double(ell) - mu.value(), d.chi))
                        : pref_minus * std::norm(bj(double(-ell) + mu.value(), d.chi));
    };
    out.lines.reserve(2 * ell_max + 1);
    for (int ell = ell_max; ell >= -ell_max; --ell) {
        out.lines.push_back({lc.omega_L - double(ell) * d.omega_s, weight(ell)});
    }
    // Past the truncation edge the Bessel orders exceed the argument and
    // the weights decay super-exponentially; a few guard terms with slack
    // bound the remainder.
    double guard = 0.0;
    for (int g = 1; g <= 4; ++g) guard += weight(ell_max + g) + weight(-ell_max - g);
    out.tail_bound = 4.0 * guard;
    return out;
}

LineSpectrum sideband_lines_asym(const SawDrive& d, const LaserCoupling& lc, int ell_max) {
    d.validate();
    lc.validate();
    if (ell_max < 1) throw std::domain_error("sideband_lines_asym: ell_max must be >= 1");
    if (!(d.chi > 0.0)) throw std::domain_error("sideband_lines_asym: requires chi > 0");
    const double z = lc.zeta, e = lc.eta, chi = d.chi;
    if (e == 0.0 && near_integer(ComplexOrder(z, 0.0)))
        throw PoleError("sideband_lines_asym: integer detuning at zero linewidth",
                        std::lround(z));
    // Moduli of the large-chi trigonometric weight forms, reduced with
    // cos(A-u)cos(A+u) = (cos 2A + cos 2u)/2 at A = chi - pi/4, u = pi*mu/2:
    //   even:  |cos(pi mu) + sin(2 chi)|^2
    //   odd+:  |sin(pi mu) - cos(2 chi)|^2
    //   odd-:  |sin(pi mu) + cos(2 chi)|^2
    // all over chi^2 omega_s^2 |sin(pi mu)|^2.
    const double den =
        chi * chi * d.omega_s * d.omega_s *
        (std::sin(kPi * z) * std::sin(kPi * z) + std::sinh(kPi * e) * std::sinh(kPi * e));
    const double ch = std::cosh(kPi * e), sh = std::sinh(kPi * e);
    const double s2c = std::sin(2.0 * chi), c2c = std::cos(2.0 * chi);
    auto sq = [](double v) { return v * v; };
    const double w_even = (sq(ch * std::cos(kPi * z) + s2c) + sq(std::sin(kPi * z) * sh)) / den;
    const double w_odd_plus = (sq(ch * std::sin(kPi * z) - c2c) + sq(std::cos(kPi * z) * sh)) / den;
    const double w_odd_minus = (sq(ch * std::sin(kPi * z) + c2c) + sq(std::cos(kPi * z) * sh)) / den;

    LineSpectrum out;
    out.lines.reserve(2 * ell_max + 1);
    for (int ell = ell_max; ell >= -ell_max; --ell) {
        double w = (ell % 2 == 0) ? w_even : (ell > 0 ? w_odd_plus : w_odd_minus);
        out.lines.push_back({lc.omega_L - double(ell) * d.omega_s, w});
    }
    // The asymptotic comb has ell-independent weights; nothing decays, so
    // no finite tail bound is reported for the truncated part.
    out.tail_bound = std::numeric_limits<double>::infinity();
    return out;
}

namespace {

// The two closed-form constituents of the coherent-scattering amplitude,
//   t1(k) = J_{-rho} J_{k+rho} / sin(pi rho),
//   t2(k) = J_{rho} J_{k-rho} / sin(pi rho)   (conjugated order family).
struct CoherentKernel {
    cplx rho;
    double arg;
    cplx inv_sin;  // 1 / sin(pi rho)
    cplx j_rho, j_mrho;

    explicit CoherentKernel(const ModulatedField& f)
        : rho(f.rho().value()), arg(f.bessel_arg()) {
        inv_sin = pi_over_sin_pi(rho) / kPi;
        j_rho = bj(rho, arg);
        j_mrho = bj(-rho, arg);
    }

    double parity(int k) const { return (k % 2 == 0) ? 1.0 : -1.0; }

    // c_k family of the inversion harmonics, without the pi*gamma/omega1
    // prefactor; satisfies the Bessel three-term recurrence for k != 0.
    cplx c_core(int k) const {
        if (k >= 0) return parity(k) * j_mrho * bj(double(k) + rho, arg) * inv_sin;
        return j_rho * bj(double(-k) - rho, arg) * inv_sin;
    }

    // |Y_k omega1 / pi|^2: a_k for k >= 0, b_k for k < 0.
    double line_core(int k) const {
        if (k >= 0) {
            cplx t = parity(k) * j_mrho * bj(double(k) + rho, arg) * inv_sin +
                     std::conj(j_rho * bj(double(k) - rho, arg) * inv_sin);
            return std::norm(t);
        }
        cplx t = j_rho * bj(double(-k) - rho, arg) * inv_sin +
                 parity(k) * std::conj(j_mrho * bj(double(-k) + rho, arg) * inv_sin);
        return std::norm(t);
    }
};

}  // namespace

LineSpectrum coherent_lines(const ModulatedField& f, double omega_L, int k_max) {
    f.validate();
    if (k_max < 0) throw std::domain_error("coherent_lines: k_max must be >= 0");
    require_non_integer(f.rho(), "coherent_lines");
    const double pref = kPi * kPi * kPi * f.gamma * f.gamma / (8.0 * f.omega1 * f.omega1);

    LineSpectrum out;
    if (f.bessel_arg() == 0.0) {
        // No modulation: only the central line survives. The k = 0 product
        // limit is J_{-rho} J_rho pi/sin(pi rho) -> 1/rho.
        double core = std::norm(2.0 * (1.0 / (kPi * f.rho().value())).real());
        out.lines.push_back({omega_L, pref * core});
        out.tail_bound = 0.0;
        return out;
    }
    CoherentKernel kern(f);
    out.lines.reserve(2 * k_max + 1);
    for (int k = k_max; k >= -k_max; --k) {
        out.lines.push_back({omega_L - double(k) * f.omega1, pref * kern.line_core(k)});
    }
    double guard = 0.0;
    for (int g = 1; g <= 4; ++g) {
        guard += kern.line_core(k_max + g) + kern.line_core(-k_max - g);
    }
    out.tail_bound = 4.0 * pref * guard;
    return out;
}

std::vector<InversionHarmonic> inversion_harmonics(const ModulatedField& f, int k_max) {
    f.validate();
    if (k_max < 0) throw std::domain_error("inversion_harmonics: k_max must be >= 0");
    require_non_integer(f.rho(), "inversion_harmonics");
    const double pref = kPi * f.gamma / f.omega1;

    std::vector<InversionHarmonic> out;
    out.reserve(2 * k_max + 1);
    if (f.bessel_arg() == 0.0) {
        const cplx c0 = f.gamma / (f.rho().value() * f.omega1);
        for (int k = -k_max; k <= k_max; ++k) {
            out.push_back({k, k == 0 ? c0.imag() : 0.0, k == 0 ? c0 : cplx(0.0)});
        }
        return out;
    }
    CoherentKernel kern(f);
    for (int k = -k_max; k <= k_max; ++k) {
        cplx c = pref * kern.c_core(k);
        out.push_back({k, c.imag(), c});
    }
    return out;
}

double mollow_spectrum(const BichromaticDot& dot, double omega) {
    dot.validate();
    const double x = dot.x();
    const double on = dot.big_omega();
    const double r = dot.phi_n() * dot.phi_n() / (4.0 * on * on);
    const double g11 = dot.gamma11(), g12 = dot.gamma12();
    const double base = (dot.omega2 - omega) / dot.omega1 + double(dot.n);
    const ComplexOrder nu1(base, g11 / dot.omega1);
    const ComplexOrder nu2(base - 2.0 * on / dot.omega1, g12 / dot.omega1);
    const ComplexOrder nu3(base + 2.0 * on / dot.omega1, g12 / dot.omega1);
    require_non_integer(nu1, "mollow_spectrum");
    require_non_integer(nu2, "mollow_spectrum");
    require_non_integer(nu3, "mollow_spectrum");

    const double fn = dot.rabi_f();
    const double c1 = (1.0 - dot.deltaS * dot.deltaS) * fn * fn / (on * on);
    const double c2 = 0.5 * (1.0 - r) * (1.0 - r) / (1.0 + r);
    const double im = c1 * newberger_product(nu1, x).imag() +
                      c2 * (newberger_product(nu2, x).imag() + newberger_product(nu3, x).imag());
    return -(dot.d12 * dot.d12 / (4.0 * kPi * dot.omega1)) * im;
}

double mollow_spectrum_series(const BichromaticDot& dot, double omega) {
    dot.validate();
    const double x = dot.x();
    const double on = dot.big_omega();
    const double r = dot.phi_n() * dot.phi_n() / (4.0 * on * on);
    const double g11 = dot.gamma11(), g12 = dot.gamma12();
    const double fn = dot.rabi_f();
    const double c1 = (1.0 - dot.deltaS * dot.deltaS) * fn * fn / (on * on);
    const double c2 = 0.5 * (1.0 - r) * (1.0 - r) / (1.0 + r);
    if (!(g11 > 0.0) || !(g12 > 0.0))
        throw std::domain_error("mollow_spectrum_series: requires positive line widths");

    const int N = 2 * series_window(std::abs(x), std::abs(omega - dot.omega2) / dot.omega1 +
                                                     std::abs(double(dot.n)) + 2.0 * on / dot.omega1);
    std::vector<double> j = bessel_jn_array(N, std::abs(x));
    auto comb = [&](double gamma_w, double shift) {
        double s = 0.0;
        for (int m = -N; m <= N; ++m) {
            double jm = j[std::abs(m)];
            double de = omega - double(dot.n - m) * dot.omega1 - dot.omega2 + shift;
            s += jm * jm * gamma_w / (de * de + gamma_w * gamma_w);
        }
        return s;
    };
    return (dot.d12 * dot.d12 / (4.0 * kPi)) *
           (c1 * comb(g11, 0.0) + c2 * (comb(g12, 2.0 * on) + comb(g12, -2.0 * on)));
}

}  // namespace spectra

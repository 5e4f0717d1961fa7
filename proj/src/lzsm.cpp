#include "spectra/lzsm.hpp"

#include <cmath>
#include <vector>

#include "spectra/newberger.hpp"
#include "spectra/special_functions.hpp"

namespace spectra {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
using cplx = std::complex<double>;

}  // namespace

void DrivenQubit::validate() const {
    if (!(omega > 0.0)) throw std::domain_error("DrivenQubit: omega must be > 0");
    if (!(delta > 0.0)) throw std::domain_error("DrivenQubit: delta must be > 0");
    if (gamma2 < 0.0) throw std::domain_error("DrivenQubit: gamma2 must be >= 0");
    if (amplitude < 0.0) throw std::domain_error("DrivenQubit: amplitude must be >= 0");
}

RateValue rate_series(const DrivenQubit& q, double rel_tol) {
    q.validate();
    if (rel_tol < 1e-14) throw std::domain_error("rate_series: rel_tol must be >= 1e-14");
    const double eps = q.eps(), gam = q.gam(), x = q.x();
    require_non_integer(q.mu(), "rate_series");
    int N = series_window(x, q.mu().abs());
    for (;;) {
        if (N > 1000000) throw AccuracyError("rate_series: window exceeded 1e6 terms", 0.0);
        std::vector<double> j = bessel_jn_array(N, x);
        double sum = 0.0;
        for (int n = -N; n <= N; ++n) {
            double jn = j[std::abs(n)];
            double d = eps - double(n);
            sum += gam * jn * jn / (d * d + gam * gam);
        }
        double jN = j[N];
        double tail = 4.0 * gam * jN * jN;  // super-exponential Bessel decay
        if (tail <= rel_tol * sum) return {0.5 * sum, RateMethod::Series};
        N *= 2;
    }
}

RateValue rate_exact(const DrivenQubit& q) {
    q.validate();
    const double x = q.x();
    const ComplexOrder mu = q.mu();
    require_non_integer(mu, "rate_exact");
    if (x == 0.0) return {rate_zero_amplitude(q).value, RateMethod::Exact};
    return {-0.5 * newberger_product(mu, x).imag(), RateMethod::Exact};
}

RateValue rate_zero_amplitude(const DrivenQubit& q) {
    q.validate();
    const double a2 = q.eps() * q.eps() + q.gam() * q.gam();
    if (a2 == 0.0) throw std::domain_error("rate_zero_amplitude: |mu| must be > 0");
    return {q.gam() / (2.0 * a2), RateMethod::Exact};
}

RateValue rate_airy_approx(const DrivenQubit& q) {
    q.validate();
    const double x = q.x();
    if (!(x > 0.0)) throw std::domain_error("rate_airy_approx: requires x > 0");
    const double a = std::cbrt(2.0 / x);
    const cplx mu_conj(q.eps(), -q.gam());
    const double im_cot = (cplx(1.0) / std::tan(kPi * mu_conj)).imag();
    const double ai = airy_ai(a * (q.eps() - x));
    return {0.5 * kPi * a * a * im_cot * ai * ai, RateMethod::AiryApprox};
}

RateValue rate_airy_asym(const DrivenQubit& q) {
    q.validate();
    const double x = q.x(), eps = q.eps();
    if (!(x > eps)) throw std::domain_error("rate_airy_asym: requires x > eps");
    const cplx mu_conj(eps, -q.gam());
    const double im_cot = (cplx(1.0) / std::tan(kPi * mu_conj)).imag();
    // Large-argument Airy form: cos^2[(2 sqrt(2)/3) x (1 - eps/x)^{3/2} - pi/4];
    // oscillation frequency in x tends to 4 sqrt(2)/3, not the exact rate's 2.
    const double c =
        std::cos((2.0 * std::sqrt(2.0) / 3.0) * x * std::pow(1.0 - eps / x, 1.5) - 0.25 * kPi);
    return {0.5 / x * im_cot * std::pow(1.0 - eps / x, -0.5) * c * c, RateMethod::AiryAsym};
}

RateValue rate_asym(const DrivenQubit& q) {
    q.validate();
    const double eps = q.eps(), gam = q.gam(), x = q.x();
    require_non_integer(q.mu(), "rate_asym");
    const double b = std::sinh(kPi * gam) / (std::cosh(2.0 * kPi * gam) - std::cos(2.0 * kPi * eps));
    return {(1.0 / x) * b * (std::cosh(kPi * gam) + std::cos(kPi * eps) * std::sin(2.0 * x)),
            RateMethod::Asymptotic};
}

std::pair<RateValue, RateValue> rate_extrema(const DrivenQubit& q) {
    q.validate();
    const double gam = q.gam(), x = q.x();
    if (!(x > 0.0)) throw std::domain_error("rate_extrema: requires x > 0");
    const double c = std::abs(std::cos(kPi * q.eps()));
    const double pref = 0.5 / x * std::sinh(kPi * gam);
    RateValue hi{pref / (std::cosh(kPi * gam) - c), RateMethod::Asymptotic};
    RateValue lo{pref / (std::cosh(kPi * gam) + c), RateMethod::Asymptotic};
    return {hi, lo};
}

RateValue rate_resonance(int n, const DrivenQubit& q) {
    q.validate();
    const double gam = q.gam();
    if (!(gam > 0.0)) throw std::domain_error("rate_resonance: requires gamma2 > 0");
    // Equivalent to rate_exact at eps = n: the reduced-argument
    // sin(pi mu) is exactly (-1)^n i sinh(pi gam) there.
    return {-0.5 * newberger_product(ComplexOrder(double(n), gam), q.x()).imag(),
            RateMethod::Exact};
}

RateValue rate_small_x(const DrivenQubit& q, int m_max) {
    q.validate();
    const double x = q.x();
    if (!(x < 1.0)) throw std::domain_error("rate_small_x: requires x < 1");
    if (m_max < 0) throw std::domain_error("rate_small_x: m_max must be >= 0");
    const cplx mu = q.mu().value();
    const cplx mu2 = mu * mu;
    cplx sum = 1.0, term = 1.0;
    for (int m = 1; m <= m_max; ++m) {
        cplx den = mu2 - double(m) * double(m);
        if (std::abs(den) < 1e-10 * double(m) * double(m)) {
            throw PoleError("rate_small_x: resonant denominator mu^2 - m^2", m);
        }
        term *= x * x * (2.0 * m - 1.0) / (2.0 * m) / den;
        sum += term;
    }
    return {-0.5 * (sum / mu).imag(), RateMethod::SmallX};
}

double double_passage_prob(const DrivenQubit& q) {
    q.validate();
    if (!(q.amplitude > 0.0)) throw std::domain_error("double_passage_prob: requires amplitude > 0");
    const double s = std::sin(q.x() - 0.5 * kPi * q.eps() - 0.25 * kPi);
    return 2.0 * kPi * q.delta * q.delta / (q.omega * q.amplitude) * s * s;
}

namespace {

// pi/2 - Si(z) for z >= 0.
double si_complement(double z) {
    if (z < 10.0) {
        // Power series for Si.
        double term = z, si = z;
        for (int n = 1; n < 60; ++n) {
            term *= -z * z / (2.0 * n * (2.0 * n + 1.0));
            si += term / (2.0 * n + 1.0);
            if (std::abs(term) < 1e-17 * std::abs(si)) break;
        }
        return kPi / 2.0 - si;
    }
    // Asymptotic: pi/2 - Si(z) = cos z / z * f(z) + sin z / z^2 * g(z).
    double z2 = z * z;
    double f = 1.0 - 2.0 / z2 + 24.0 / (z2 * z2) - 720.0 / (z2 * z2 * z2);
    double g = 1.0 - 6.0 / z2 + 120.0 / (z2 * z2) - 5040.0 / (z2 * z2 * z2);
    return std::cos(z) / z * f + std::sin(z) / z2 * g;
}

double fourier_in_bias_quadrature(const DrivenQubit& q, double k_E) {
    const double om = q.omega, g2 = q.gamma2, d2 = q.delta * q.delta;
    if (!(g2 > 0.0)) throw std::domain_error("fourier_in_bias: quadrature requires gamma2 > 0");
    const double ak = std::abs(k_E);
    // Window wide enough that the analytic 1/E^2 tail correction below
    // leaves only the O(1/L^3) residue.
    const double L = std::max(40.0 * std::max(1.0, g2) * om + 20.0 * om, 300.0 * om) +
                     q.amplitude;
    double h = std::min({g2 / 6.0, om / 12.0, ak > 0.0 ? kPi / (12.0 * ak) : om});
    int steps = static_cast<int>(std::ceil(L / h));
    if (steps % 2 != 0) ++steps;
    h = L / steps;
    auto w_phys = [&](double bias) {
        DrivenQubit qq = q;
        qq.bias = bias;
        return rate_exact(qq).value * d2 / om;
    };
    // W is even in the bias: 2 * int_0^L W(E) cos(k E) dE by Simpson.
    double acc = w_phys(0.0) + w_phys(L) * std::cos(ak * L);
    for (int i = 1; i < steps; ++i) {
        double e = i * h;
        acc += (i % 2 == 1 ? 4.0 : 2.0) * w_phys(e) * std::cos(ak * e);
    }
    double integral = 2.0 * acc * h / 3.0;
    // Tail: W(E) -> (d2 g2 / 2) / E^2, so
    // 2 int_L^inf cos(kE)/E^2 dE = 2 [cos(kL)/L - k (pi/2 - Si(kL))].
    double tail = d2 * g2 * (std::cos(ak * L) / L - ak * si_complement(ak * L));
    return integral + tail;
}

}  // namespace

double fourier_in_bias(const DrivenQubit& q, double k_E, FourierMethod method) {
    q.validate();
    if (!std::isfinite(k_E)) throw std::domain_error("fourier_in_bias: non-finite k_E");
    const double x = q.x();
    const double damp = std::exp(-q.gamma2 * std::abs(k_E));
    const double pref = 0.5 * kPi * q.delta * q.delta;
    switch (method) {
        case FourierMethod::Closed: {
            double arg = 2.0 * x * std::abs(std::sin(0.5 * q.omega * k_E));
            return pref * damp * bessel_jn(0, arg);
        }
        case FourierMethod::GrafSeries: {
            int N = series_window(x, 0.0);
            std::vector<double> j = bessel_jn_array(N, x);
            double sum = j[0] * j[0];
            for (int n = 1; n <= N; ++n) {
                sum += 2.0 * j[n] * j[n] * std::cos(double(n) * q.omega * k_E);
            }
            return pref * damp * sum;
        }
        case FourierMethod::Quadrature:
            return fourier_in_bias_quadrature(q, k_E);
    }
    throw std::logic_error("fourier_in_bias: unknown method");
}

FourierDoubleResult fourier_double(const DrivenQubit& q, double k_E, double k_A) {
    q.validate();
    const double s = std::sin(0.5 * q.omega * k_E);
    const double radicand = 4.0 / (q.omega * q.omega) * s * s - k_A * k_A;
    if (radicand < 0.0) return {0.0, SupportStatus::OutsideSupport};
    if (radicand == 0.0) return {0.0, SupportStatus::Boundary};
    return {kPi * q.delta * q.delta * std::exp(-q.gamma2 * std::abs(k_E)) / std::sqrt(radicand),
            SupportStatus::Inside};
}

std::complex<double> fourier_in_amplitude(const DrivenQubit& q, double k_x) {
    q.validate();
    if (k_x < 0.0 || k_x > 2.0) return 0.0;
    const ComplexOrder mu = q.mu();
    require_non_integer(mu, "fourier_in_amplitude");
    ComplexOrder degree(mu.re - 0.5, mu.im);
    return pi_over_sin_pi(mu.value()) * legendre_p(degree, 0.5 * k_x * k_x - 1.0).value;
}

}  // namespace spectra

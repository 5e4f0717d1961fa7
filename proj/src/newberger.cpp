#include "spectra/newberger.hpp"

#include <cmath>

#include "spectra/special_functions.hpp"

namespace spectra {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
using cplx = std::complex<double>;

void check_sum_spec(const SumSpec& s) {
    if (s.p + s.q <= -1) throw std::domain_error("SumSpec: convergence requires p + q > -1");
    if (!(s.x >= 0.0) || !std::isfinite(s.x)) throw std::domain_error("SumSpec: x must be finite and >= 0");
    require_non_integer(s.mu, "SumSpec");
}

}  // namespace

std::complex<double> pi_over_sin_pi(std::complex<double> z) {
    // Reduce by the nearest integer so sin(pi z) keeps full relative
    // accuracy near the poles: sin(pi z) = (-1)^n sin(pi (z - n)).
    double n = std::round(z.real());
    cplx s = std::sin(kPi * (z - n));
    if (static_cast<long long>(n) % 2 != 0) s = -s;
    return kPi / s;
}

int series_window(double x, double abs_mu) {
    return static_cast<int>(std::ceil(x) + std::ceil(6.0 * std::cbrt(x + 1.0)) +
                            std::ceil(abs_mu)) + 20;
}

std::complex<double> sum_exact(const SumSpec& spec) {
    check_sum_spec(spec);
    const cplx mu = spec.mu.value();
    if (spec.x == 0.0) {
        // Only the n = -p = q term survives.
        return (spec.p + spec.q == 0) ? 1.0 / (double(spec.q) + mu) : cplx(0.0);
    }
    cplx a = bessel_j(ComplexOrder(double(spec.p) - mu), spec.x).value;
    cplx b = bessel_j(ComplexOrder(double(spec.q) + mu), spec.x).value;
    cplx v = pi_over_sin_pi(mu) * a * b;
    return (spec.q % 2 != 0) ? -v : v;
}

EvalResult sum_series(const SumSpec& spec, double rel_tol) {
    check_sum_spec(spec);
    if (rel_tol < 1e-14) throw std::domain_error("sum_series: rel_tol must be >= 1e-14");
    const cplx mu = spec.mu.value();
    EvalResult r;
    if (spec.x == 0.0) {
        r.value = (spec.p + spec.q == 0) ? 1.0 / (double(spec.q) + mu) : cplx(0.0);
        r.terms_used = 1;
        return r;
    }
    int N = series_window(spec.x, spec.mu.abs()) + std::max(std::abs(spec.p), std::abs(spec.q));
    for (;;) {
        if (N > 1000000) {
            throw AccuracyError("sum_series: window exceeded 1e6 terms", r.est_error);
        }
        const int shift = std::max(std::abs(spec.p), std::abs(spec.q));
        std::vector<double> j = bessel_jn_array(N + shift, spec.x);
        auto jn = [&](int n) {
            int a = std::abs(n);
            return (n < 0 && a % 2 == 1) ? -j[a] : j[a];
        };
        cplx sum = 0.0;
        for (int n = -N; n <= N; ++n) {
            sum += jn(n + spec.p) * jn(n - spec.q) / (double(n) + mu);
        }
        // Tail bound: terms past the turning point decay super-exponentially,
        // so the edge-term magnitude (times a slack factor) bounds the rest.
        double edge = std::abs(jn(N + spec.p) * jn(N - spec.q) / (double(N) + mu)) +
                      std::abs(jn(-N + spec.p) * jn(-N - spec.q) / (double(-N) + mu));
        double tail = 4.0 * double(N) * edge;
        r.value = sum;
        r.est_error = tail;
        r.terms_used = 2 * N + 1;
        if (tail <= rel_tol * std::abs(sum)) return r;
        N *= 2;
    }
}

std::complex<double> sum_exact_general(const GeneralSumSpec& spec) {
    if (spec.stride <= 0.0 || spec.stride > 1.0)
        throw std::domain_error("GeneralSumSpec: stride must be in (0, 1]");
    if ((spec.alpha + spec.beta).real() <= -1.0)
        throw std::domain_error("GeneralSumSpec: requires Re(alpha + beta) > -1");
    require_non_integer(spec.mu, "GeneralSumSpec");
    const cplx mu = spec.mu.value();
    if (spec.x == 0.0) {
        // n = 0 survives only when both orders vanish there.
        if (spec.alpha == cplx(0.0) && spec.beta == cplx(0.0)) return 1.0 / mu;
    }
    cplx a = bessel_j(ComplexOrder(spec.alpha - spec.stride * mu), spec.x).value;
    cplx b = bessel_j(ComplexOrder(spec.beta + spec.stride * mu), spec.x).value;
    return pi_over_sin_pi(mu) * a * b;
}

std::complex<double> cosine_sum(const ComplexOrder& mu, double phi) {
    if (std::abs(phi) > kPi) throw std::domain_error("cosine_sum: |phi| must be <= pi");
    require_non_integer(mu, "cosine_sum");
    return pi_over_sin_pi(mu.value()) * std::cos(mu.value() * phi);
}

std::complex<double> newberger_product(const ComplexOrder& mu, double x) {
    require_non_integer(mu, "newberger_product");
    const cplx m = mu.value();
    // Small-amplitude product expansion: entire in x, free of the 0 * inf
    // ambiguity of the two factors at x = 0, and immune to the separate
    // under/overflow of J_mu and J_{-mu} when |mu| dwarfs x.
    if (x < 1.0 || 4.0 * x <= mu.abs()) {
        cplx sum = 1.0, term = 1.0;
        for (int k = 1; k < 80; ++k) {
            term *= x * x * (2.0 * k - 1.0) / (2.0 * k) / (m * m - double(k) * double(k));
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return sum / m;
    }
    cplx a = bessel_j(mu, x).value;
    cplx b = bessel_j(ComplexOrder(-mu.re, -mu.im), x).value;
    return pi_over_sin_pi(m) * a * b;
}

}  // namespace spectra

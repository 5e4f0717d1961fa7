#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace spectra {

/// A complex Bessel order / spectral detuning parameter mu = re + i*im.
/// This is the spectral parameter of every resummed series in the library
/// (mu, nu, rho, nu_1..nu_3 are all instances of this type).
struct ComplexOrder {
    double re = 0.0;
    double im = 0.0;

    ComplexOrder() = default;
    ComplexOrder(double r, double i) : re(r), im(i) {}
    explicit ComplexOrder(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> value() const { return {re, im}; }
    ComplexOrder conj() const { return {re, -im}; }
    double abs() const { return std::hypot(re, im); }
};

inline bool operator==(const ComplexOrder& a, const ComplexOrder& b) {
    return a.re == b.re && a.im == b.im;
}

/// Result of an adaptive numerical evaluation.
struct EvalResult {
    std::complex<double> value{};
    double est_error = 0.0;  // absolute error estimate, >= 0
    int terms_used = 1;
};

/// Thrown when an operation that divides by sin(pi*mu) is asked to
/// evaluate at (or numerically indistinguishable from) a real integer mu.
class PoleError : public std::domain_error {
public:
    PoleError(const std::string& what, long nearest)
        : std::domain_error(what), nearest_integer(nearest) {}
    long nearest_integer;
};

/// Thrown when an adaptive series cannot reach the requested tolerance.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_rel_error(achieved) {}
    double achieved_rel_error;
};

/// True when mu is within tol of a real integer (pole of 1/sin(pi*mu)).
inline bool near_integer(const ComplexOrder& mu, double tol = 1e-8) {
    return std::abs(mu.im) < tol && std::abs(mu.re - std::round(mu.re)) < tol;
}

inline void require_non_integer(const ComplexOrder& mu, const char* where) {
    if (near_integer(mu)) {
        throw PoleError(std::string(where) + ": mu is a real integer (pole of 1/sin(pi*mu))",
                        std::lround(mu.re));
    }
}

}  // namespace spectra

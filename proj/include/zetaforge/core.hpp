#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace zetaforge {

using complex_t = std::complex<double>;

// Knobs shared by every truncated-series / quadrature evaluator.
// contour_abscissa is only consumed by the Mellin-Barnes cross-check
// integrator; it must stay right of every pole of the integrand, so the
// integrator raises it automatically when the parameter demands more.
struct SeriesParams {
    std::size_t max_terms = 400;
    double tolerance = 1e-12;
    double epsilon_perturb = 1e-4;   // offset used near integer-parameter pole collisions
    double contour_abscissa = 1.7;

    void validate() const {
        if (max_terms < 8) throw std::invalid_argument("SeriesParams: max_terms must be >= 8");
        if (!(tolerance > 0)) throw std::invalid_argument("SeriesParams: tolerance must be > 0");
        if (!(epsilon_perturb > 0) || epsilon_perturb > 1e-2)
            throw std::invalid_argument("SeriesParams: epsilon_perturb must lie in (0, 1e-2]");
    }
};

enum EvalFlag : unsigned {
    FlagTruncated   = 1u << 0,  // hit max_terms before meeting tolerance
    FlagPerturbed   = 1u << 1,  // evaluated off an integer parameter and averaged
    FlagRegularized = 1u << 2,  // analytic-continuation / finite-part value
};

// A computed value plus an honest account of how it was obtained.
// abs_error_estimate bounds the last included term or the quadrature
// error estimate of whichever route produced the value.
struct EvalResult {
    complex_t value{0.0, 0.0};
    double abs_error_estimate = 0.0;
    std::size_t terms_used = 0;
    unsigned flags = 0;

    bool has(EvalFlag f) const { return (flags & f) != 0; }
};

inline std::vector<std::string> flag_names(unsigned flags) {
    std::vector<std::string> out;
    if (flags & FlagTruncated) out.push_back("Truncated");
    if (flags & FlagPerturbed) out.push_back("Perturbed");
    if (flags & FlagRegularized) out.push_back("Regularized");
    return out;
}

inline bool near_integer(double x, double eps) {
    double r = x - static_cast<double>(static_cast<long long>(x + (x >= 0 ? 0.5 : -0.5)));
    return r < eps && r > -eps;
}

// Nearest integer to Re z when z sits within eps of it (and of the real axis).
inline bool near_positive_integer(const complex_t& z, double eps, long long& n_out) {
    if (std::abs(z.imag()) > eps) return false;
    double re = z.real();
    long long n = static_cast<long long>(re + (re >= 0 ? 0.5 : -0.5));
    if (n < 1) return false;
    if (std::abs(re - static_cast<double>(n)) > eps) return false;
    n_out = n;
    return true;
}

}  // namespace zetaforge

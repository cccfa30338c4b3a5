#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "zetaforge/core.hpp"

namespace zetaforge {

// exp(s * ln(base)) for a positive real base; keeps complex powers of
// positive reals off std::pow's generic (and slower) complex-log path.
inline complex_t cpow(double base, const complex_t& s) {
    if (!(base > 0)) throw std::domain_error("cpow: base must be positive");
    return std::exp(s * std::log(base));
}

// sin(pi x) and cos(pi x) with the range reduction done on x itself.
// Reducing by the nearest integer is exact, so these stay fully accurate
// near the zeros, where sin(pi * x) evaluated directly loses the digits
// the reflection formula needs.
inline double sinpi(double x) {
    double n = std::round(x);
    double r = x - n;
    double s = std::sin(std::numbers::pi * r);
    return std::fmod(n, 2.0) != 0.0 ? -s : s;
}

inline double cospi(double x) {
    double n = std::round(x);
    double r = x - n;
    double c = std::cos(std::numbers::pi * r);
    return std::fmod(n, 2.0) != 0.0 ? -c : c;
}

// sin(pi z) = sin(pi x) cosh(pi y) + i cos(pi x) sinh(pi y), built on the
// reduced real-axis pieces.
inline complex_t csinpi(const complex_t& z) {
    const double py = std::numbers::pi * z.imag();
    return {sinpi(z.real()) * std::cosh(py), cospi(z.real()) * std::sinh(py)};
}

inline complex_t ccospi(const complex_t& z) {
    const double py = std::numbers::pi * z.imag();
    return {cospi(z.real()) * std::cosh(py), -sinpi(z.real()) * std::sinh(py)};
}

namespace detail {

// Lanczos, g = 7, 9 terms. Relative error ~1e-14 on the right half plane.
inline constexpr std::array<double, 9> lanczos_c = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline complex_t gamma_lanczos_right(const complex_t& z) {
    // valid for Re z > 0.5
    complex_t a{lanczos_c[0], 0.0};
    for (int k = 1; k < 9; ++k) a += lanczos_c[k] / (z + complex_t(k - 1, 0.0));
    complex_t t = z + complex_t(6.5, 0.0);
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z - complex_t(0.5, 0.0)) *
           std::exp(-t) * a;
}

}  // namespace detail

// Gamma on the cut plane. Nonpositive-integer input is a pole and is
// rejected; everything else goes through Lanczos, with reflection for
// the left half plane.
inline complex_t complex_gamma(const complex_t& z) {
    if (z.imag() == 0.0) {
        double re = z.real();
        if (re <= 0.0 && re == std::floor(re))
            throw std::domain_error("complex_gamma: pole at nonpositive integer");
    }
    if (z.real() > 0.5) return detail::gamma_lanczos_right(z);
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::numbers::pi /
           (csinpi(z) * detail::gamma_lanczos_right(complex_t(1.0, 0.0) - z));
}

inline double real_gamma(double x) { return complex_gamma(complex_t(x, 0.0)).real(); }

// 1/Gamma(z), entire: returns 0 at the nonpositive-integer poles of Gamma.
inline complex_t rgamma(const complex_t& z) {
    if (z.imag() == 0.0) {
        double re = z.real();
        if (re <= 0.0 && re == std::floor(re)) return complex_t(0.0, 0.0);
    }
    return complex_t(1.0, 0.0) / complex_gamma(z);
}

// digamma for positive real argument: shift to x >= 12, then the
// asymptotic log expansion with a handful of even Bernoulli terms.
inline double digamma(double x) {
    if (!(x > 0)) throw std::domain_error("digamma: requires x > 0");
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x, inv2 = inv * inv;
    // B2/2, B4/4, B6/6, B8/8, B10/10, B12/12
    static constexpr double b[] = {1.0 / 12.0,  -1.0 / 120.0, 1.0 / 252.0,
                                   -1.0 / 240.0, 1.0 / 132.0,  -691.0 / 32760.0};
    double p = inv2, corr = 0.0;
    for (double coeff : b) {
        corr += coeff * p;
        p *= inv2;
    }
    return acc + std::log(x) - 0.5 * inv - corr;
}

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243104;

// psi(n) = -gamma + H_{n-1}, cached; the residue series consumes these
// for every term so the cache pays off.
inline double digamma_int(long long n) {
    if (n < 1) throw std::domain_error("digamma_int: requires n >= 1");
    static thread_local std::vector<double> h{0.0};  // h[k] = H_k
    while (static_cast<long long>(h.size()) <= n - 1)
        h.push_back(h.back() + 1.0 / static_cast<double>(h.size()));
    return -euler_gamma + h[static_cast<std::size_t>(n - 1)];
}

}  // namespace zetaforge

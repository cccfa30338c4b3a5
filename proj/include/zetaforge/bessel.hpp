#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zetaforge/gamma.hpp"
#include "zetaforge/quadrature.hpp"

namespace zetaforge {

namespace detail {

// Hankel asymptotic auxiliaries P, Q for order nu (mu = 4 nu^2):
//   c_0 = 1,  c_m = c_{m-1} (mu - (2m-1)^2) / (m 8x)
//   P = c0 - c2 + c4 - ...,  Q = c1 - c3 + c5 - ...
// Truncated at the smallest term; for x >= 12 that is far below 1e-16.
inline void hankel_pq(double mu, double x, double& P, double& Q) {
    double c = 1.0, p = 1.0, q = 0.0;
    double prev = 1.0;
    int sign_p = -1, sign_q = 1;
    for (int m = 1; m < 40; ++m) {
        c *= (mu - (2.0 * m - 1.0) * (2.0 * m - 1.0)) / (m * 8.0 * x);
        if (std::abs(c) >= prev) break;  // asymptotic tail started growing
        prev = std::abs(c);
        if (m % 2 == 1) {
            q += sign_q * c;
            sign_q = -sign_q;
        } else {
            p += sign_p * c;
            sign_p = -sign_p;
        }
        if (std::abs(c) < 1e-18) break;
    }
    P = p;
    Q = q;
}

}  // namespace detail

// J0: ascending series up to x = 12, Hankel expansion beyond.
inline double bessel_j0(double x) {
    x = std::abs(x);
    if (x <= 12.0) {
        const double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k <= 60; ++k) {
            term *= -q / (static_cast<double>(k) * k);
            sum += term;
            if (std::abs(term) < 1e-17 * (1.0 + std::abs(sum))) break;
        }
        return sum;
    }
    double P, Q;
    detail::hankel_pq(0.0, x, P, Q);
    const double chi = x - 0.25 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (P * std::cos(chi) - Q * std::sin(chi));
}

inline double bessel_j1(double x) {
    const double ax = std::abs(x);
    double r;
    if (ax <= 12.0) {
        const double q = 0.25 * ax * ax;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k <= 60; ++k) {
            term *= -q / (static_cast<double>(k) * (k + 1.0));
            sum += term;
            if (std::abs(term) < 1e-17 * (1.0 + std::abs(sum))) break;
        }
        r = 0.5 * ax * sum;
    } else {
        double P, Q;
        detail::hankel_pq(4.0, ax, P, Q);
        const double chi = ax - 0.75 * std::numbers::pi;
        r = std::sqrt(2.0 / (std::numbers::pi * ax)) * (P * std::cos(chi) - Q * std::sin(chi));
    }
    return x < 0 ? -r : r;
}

// Y0 for x > 0: log-coupled ascending series up to x = 12, Hankel beyond.
inline double bessel_y0(double x) {
    if (!(x > 0)) throw std::domain_error("bessel_y0: requires x > 0");
    const double pi = std::numbers::pi;
    if (x <= 12.0) {
        const double q = 0.25 * x * x;
        double term = 1.0, sum = 0.0, hk = 0.0;
        for (int k = 1; k <= 60; ++k) {
            term *= -q / (static_cast<double>(k) * k);
            hk += 1.0 / k;
            sum += -term * hk;  // (-1)^{k+1} H_k q^k / (k!)^2
            if (std::abs(term) < 1e-17) break;
        }
        return (2.0 / pi) * ((std::log(0.5 * x) + euler_gamma) * bessel_j0(x) + sum);
    }
    double P, Q;
    detail::hankel_pq(0.0, x, P, Q);
    const double chi = x - 0.25 * pi;
    return std::sqrt(2.0 / (pi * x)) * (P * std::sin(chi) + Q * std::cos(chi));
}

// K0 for x > 0. Three regimes:
//   x <= 2   log-coupled ascending series (cancellation still mild there)
//   x <= 14  integral representation, integrand exp(-x cosh t)
//   x >  14  asymptotic series, optimal truncation well under 1e-15
inline double bessel_k0(double x) {
    if (!(x > 0)) throw std::domain_error("bessel_k0: requires x > 0");
    if (x <= 2.0) {
        const double q = 0.25 * x * x;
        double term = 1.0, i0 = 1.0, sum = 0.0, hk = 0.0;
        for (int k = 1; k <= 40; ++k) {
            term *= q / (static_cast<double>(k) * k);
            hk += 1.0 / k;
            i0 += term;
            sum += term * hk;
            if (term < 1e-18) break;
        }
        return -(std::log(0.5 * x) + euler_gamma) * i0 + sum;
    }
    if (x <= 14.0) {
        const double T = std::acosh(745.0 / x);
        auto f = [x](double t) { return std::exp(-x * std::cosh(t)); };
        return adaptive_integrate(f, 0.0, T, 1e-18, 1e-15).value;
    }
    double c = 1.0, sum = 1.0;
    for (int m = 1; m < 30; ++m) {
        c *= -(2.0 * m - 1.0) * (2.0 * m - 1.0) / (m * 8.0 * x);
        sum += c;
        if (std::abs(c) < 1e-17) break;
    }
    return std::sqrt(0.5 * std::numbers::pi / x) * std::exp(-x) * sum;
}

// McMahon estimates for the k-th positive zero (k >= 1). Used only to
// place oscillation-synchronized panel cuts, so a few ppm is plenty.
inline double j0_zero(int k) {
    const double b = (k - 0.25) * std::numbers::pi;
    const double ib = 1.0 / (8.0 * b);
    return b + ib * (1.0 - ib * ib * (124.0 / 3.0 - ib * ib * 120928.0 / 15.0));
}

inline double y0_zero(int k) {
    const double b = (k - 0.75) * std::numbers::pi;
    const double ib = 1.0 / (8.0 * b);
    return b + ib * (1.0 - ib * ib * (124.0 / 3.0 - ib * ib * 120928.0 / 15.0));
}

}  // namespace zetaforge

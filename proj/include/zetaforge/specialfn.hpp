#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "zetaforge/bessel.hpp"
#include "zetaforge/core.hpp"
#include "zetaforge/gamma.hpp"
#include "zetaforge/quadrature.hpp"

namespace zetaforge {

namespace detail {

// Below this x the residue series for G (and its phased companions)
// cancels catastrophically, so evaluation switches to the Bessel-tail
// representations that are exact for x on (0, x_switch). The series
// already drifts to ~1e-10 by x = 0.015 while the tail forms track the
// contour integral to full precision past x = 0.1, so the switch sits
// at 0.05 with margin on both sides.
inline constexpr double meijer_x_switch = 0.05;

// Mellin transforms of J0 / Y0 truncated at infinity:
//   C_J(u) = sin(pi u)  Gamma(1-u)^2 / pi   ( = Gamma(1-u)/Gamma(u) )
//   C_Y(u) = cos(pi u)  Gamma(1-u)^2 / pi   ( = cot(pi u) C_J(u) )
// Written through Gamma(1-u)^2 so u at or below 0 stays regular.
inline complex_t mellin_cj(const complex_t& u) {
    complex_t g = complex_gamma(complex_t(1.0, 0.0) - u);
    return csinpi(u) * g * g / std::numbers::pi;
}

inline complex_t mellin_cy(const complex_t& u) {
    complex_t g = complex_gamma(complex_t(1.0, 0.0) - u);
    return ccospi(u) * g * g / std::numbers::pi;
}

// Iterated averaging of a sequence of partial sums whose tail alternates
// (panel integrals between consecutive zeros of an oscillatory kernel).
// Returns the accelerated limit and the spread of the last two rows.
inline std::pair<complex_t, double> average_partials(std::vector<complex_t> row) {
    if (row.empty()) return {complex_t(0.0, 0.0), 0.0};
    complex_t prev = row.back();
    while (row.size() > 1) {
        prev = row.back();
        for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
    }
    // spread between the final value and the tail of the previous row
    return {row[0], std::abs(row[0] - prev)};
}

// Oscillatory Mellin tails
//   T_J(u, X) = 2 int_{sqrt X}^inf s^{1-2u} J0(2s) ds
//   T_Y(u, X) = same with Y0
// Panels are cut near consecutive zeros of the kernel, then the
// alternating panel series is resummed by iterated averaging. Needs
// sqrt(X) past the last ascending-series crossover, i.e. X >= ~36.
template <bool UseY>
inline EvalResult bessel_mellin_tail(const complex_t& u, double X, const SeriesParams& params) {
    if (!(X > 0)) throw std::domain_error("bessel_mellin_tail: requires X > 0");
    const double S = std::sqrt(X);
    const complex_t expo = complex_t(1.0, 0.0) - 2.0 * u;
    auto f = [&](double s) {
        double kern = UseY ? bessel_y0(2.0 * s) : bessel_j0(2.0 * s);
        return cpow(s, expo) * kern;
    };

    // first kernel zero past S (kernel argument is 2s)
    int k = std::max(1, static_cast<int>((2.0 * S) / std::numbers::pi));
    auto zero_at = [&](int j) { return 0.5 * (UseY ? y0_zero(j) : j0_zero(j)); };
    while (zero_at(k) <= S) ++k;

    const int max_panels = 48;
    std::vector<complex_t> partials;
    partials.reserve(max_panels);
    complex_t acc{0.0, 0.0};
    double a = S;
    std::size_t evals = 0;
    for (int p = 0; p < max_panels; ++p) {
        double b = zero_at(k + p);
        acc += 2.0 * integrate_fixed(f, a, b, 16);
        evals += 16;
        partials.push_back(acc);
        a = b;
    }
    auto [val, spread] = average_partials(std::move(partials));
    EvalResult r;
    r.value = val;
    r.abs_error_estimate = spread + 1e-16 * std::abs(val);
    r.terms_used = evals;
    (void)params;
    return r;
}

inline EvalResult tail_tj(const complex_t& u, double X, const SeriesParams& p) {
    return bessel_mellin_tail<false>(u, X, p);
}
inline EvalResult tail_ty(const complex_t& u, double X, const SeriesParams& p) {
    return bessel_mellin_tail<true>(u, X, p);
}

// 2 int_{X}^inf t^{-u} K0(2 sqrt t) dt, written on s = sqrt t where the
// substitution doubles it again: 4 int_{sqrt X}^inf s^{1-2u} K0(2s) ds.
inline EvalResult k0_mellin_tail(const complex_t& u, double X, const SeriesParams& params) {
    const double S = std::sqrt(X);
    const complex_t expo = complex_t(1.0, 0.0) - 2.0 * u;
    auto f = [&](double s) { return cpow(s, expo) * bessel_k0(2.0 * s); };
    // integrand ~ exp(-2s); 20 e-folds past S is below double noise
    auto q = adaptive_integrate(f, S, S + 22.0, 1e-18, 0.2 * params.tolerance);
    EvalResult r;
    r.value = 4.0 * q.value;
    r.abs_error_estimate = 4.0 * q.err;
    r.terms_used = q.evals;
    return r;
}

// Residue expansion of G(z), z = x e^{i pi phase}, L = ln x + i pi phase:
//   G = Gamma(1-u)^2 + sum_{k>=0} e^{s0 L} (L + 2 psi(k+1) - 1/s0) / ((k!)^2 s0),
//   s0 = u - 1 - k.
// Terms are generated by the stable ratio  t_{k+1} = t_k e^{-L} / (k+1)^2;
// the running peak magnitude feeds the cancellation-noise estimate.
inline EvalResult meijer_residue_series(const complex_t& u, double x, int phase,
                                        const SeriesParams& params) {
    const complex_t L(std::log(x), std::numbers::pi * phase);
    const complex_t one(1.0, 0.0);
    complex_t g = complex_gamma(one - u);
    complex_t sum = g * g;
    double peak = std::abs(sum);

    complex_t t = std::exp((u - one) * L);  // e^{s0 L} at k = 0
    const std::size_t k_min = static_cast<std::size_t>(2.0 / std::sqrt(x)) + 4;
    EvalResult r;
    std::size_t k = 0;
    for (; k < params.max_terms; ++k) {
        complex_t s0 = u - one - static_cast<double>(k);
        complex_t term = t * (L + 2.0 * digamma_int(static_cast<long long>(k) + 1) - one / s0) / s0;
        sum += term;
        peak = std::max(peak, std::abs(term));
        double mag = std::abs(term);
        if (k > k_min && mag < params.tolerance * (1.0 + std::abs(sum))) {
            ++k;
            break;
        }
        t *= std::exp(-L) / ((static_cast<double>(k) + 1.0) * (static_cast<double>(k) + 1.0));
    }
    if (k >= params.max_terms) r.flags |= FlagTruncated;
    r.value = sum;
    r.terms_used = k;
    r.abs_error_estimate = peak * 2e-16 + params.tolerance * std::abs(sum);
    return r;
}

// Small-x evaluation through the exact Bessel-moment representations:
//   phase 0:   G(x)            = 2 int_{1/x}^inf t^{-u} K0(2 sqrt t) dt
//   phase -+1: G(x e^{-+i pi}) = Gamma(1-u)^2 - pi e^{-+i pi u} (B_Y +- i B_J)
// with B_J = C_J - T_J and B_Y = C_Y - T_Y at X = 1/x.
inline EvalResult meijer_smallx(const complex_t& u, double x, int phase,
                                const SeriesParams& params) {
    const double X = 1.0 / x;
    if (phase == 0) return k0_mellin_tail(u, X, params);

    EvalResult tj = tail_tj(u, X, params);
    EvalResult ty = tail_ty(u, X, params);
    complex_t bj = mellin_cj(u) - tj.value;
    complex_t by = mellin_cy(u) - ty.value;
    complex_t g = complex_gamma(complex_t(1.0, 0.0) - u);
    const complex_t i1(0.0, 1.0);
    const complex_t cp = ccospi(u), sp = csinpi(u);
    complex_t val;
    if (phase < 0)
        val = g * g - std::numbers::pi * (cp - i1 * sp) * (by + i1 * bj);
    else
        val = g * g - std::numbers::pi * (cp + i1 * sp) * (by - i1 * bj);
    EvalResult r;
    r.value = val;
    r.terms_used = tj.terms_used + ty.terms_used;
    r.abs_error_estimate = std::numbers::pi * (tj.abs_error_estimate + ty.abs_error_estimate) +
                           2e-16 * (std::abs(g * g) + std::abs(val));
    return r;
}

inline EvalResult meijer_raw(const complex_t& u, double x, int phase, const SeriesParams& params) {
    if (x >= meijer_x_switch) return meijer_residue_series(u, x, phase, params);
    return meijer_smallx(u, x, phase, params);
}

// When u sits within eps of a positive integer n (pole collision in the
// term layout), evaluate at n -+ eps and n -+ 2 eps instead. Each
// symmetric average cancels the odd pole pair and carries an eps^2
// curvature bias; Richardson across the two spacings removes that bias
// and its magnitude is reported, not hidden. Off the seam, u passes
// through untouched.
template <class F>
inline EvalResult perturb_near_integer(const complex_t& u, const SeriesParams& params, F&& f) {
    long long n = 0;
    // trigger radius deliberately exceeds the offset so that u = n +- eps
    // itself lands on the stabilized path regardless of rounding
    if (!near_positive_integer(u, 1.5 * params.epsilon_perturb, n)) return f(u);
    const double eps = params.epsilon_perturb;
    const double c = static_cast<double>(n);
    EvalResult e[4] = {f(complex_t(c - eps, 0.0)), f(complex_t(c + eps, 0.0)),
                       f(complex_t(c - 2.0 * eps, 0.0)), f(complex_t(c + 2.0 * eps, 0.0))};
    complex_t a1 = 0.5 * (e[0].value + e[1].value);
    complex_t a2 = 0.5 * (e[2].value + e[3].value);
    EvalResult r;
    r.value = (4.0 * a1 - a2) / 3.0;
    r.flags = FlagPerturbed;
    double noise = 0.0;
    for (const EvalResult& c4 : e) {
        r.terms_used += c4.terms_used;
        r.flags |= c4.flags;
        noise = std::max(noise, c4.abs_error_estimate);
    }
    r.abs_error_estimate = 2.0 * noise + 0.5 * std::abs(a1 - a2) + eps * eps * std::abs(r.value);
    return r;
}

}  // namespace detail

// G^{0,3}_{3,1}(1, u, u; 0 | x e^{i pi phase}) for phase in {-1, 0, +1}.
inline EvalResult meijer_g_0331(const complex_t& u, double x, int phase,
                                const SeriesParams& params = {}) {
    params.validate();
    if (!(x > 0)) throw std::domain_error("meijer_g_0331: requires x > 0");
    if (phase < -1 || phase > 1)
        throw std::domain_error("meijer_g_0331: phase must be -1, 0, or +1");
    return detail::perturb_near_integer(
        u, params, [&](const complex_t& uu) { return detail::meijer_raw(uu, x, phase, params); });
}

// Direct Mellin-Barnes evaluation of the phase-0 function, used as a
// slow independent cross-check of the residue expansion. The abscissa
// must clear every pole of Gamma(1-u+s)^2/s, so it is raised to
// Re u - 1/2 when the configured value is not already beyond it.
inline EvalResult meijer_g_contour(const complex_t& u, double x, const SeriesParams& params = {}) {
    params.validate();
    if (!(x > 0)) throw std::domain_error("meijer_g_contour: requires x > 0");
    const double B = std::max(params.contour_abscissa, u.real() - 0.5);
    const double T = 28.0;
    auto f = [&](double t) {
        complex_t s(B, t);
        complex_t g = complex_gamma(complex_t(1.0, 0.0) - u + s);
        return g * g * cpow(x, s) / s;
    };
    auto q = adaptive_integrate(f, -T, T, 1e-15, 0.1 * params.tolerance);
    EvalResult r;
    r.value = q.value / (2.0 * std::numbers::pi);
    r.abs_error_estimate = q.err / (2.0 * std::numbers::pi) + 1e-14 * std::abs(r.value);
    r.terms_used = q.evals;
    return r;
}

// The combination  -e^{i pi u} G(x e^{-i pi}) - e^{-i pi u} G(x e^{+i pi}) - 2 G(x).
// For x >= x_switch the three residue expansions are summed directly;
// below it the constant blocks cancel exactly and what remains is
//   -2 pi T_Y(u, 1/x) - 2 G_0(x),
// which is what the conditionally convergent m-sums actually feel.
inline EvalResult wilton_g_combo(const complex_t& u, double x, const SeriesParams& params = {}) {
    params.validate();
    if (!(x > 0)) throw std::domain_error("wilton_g_combo: requires x > 0");
    return detail::perturb_near_integer(u, params, [&](const complex_t& uu) {
        EvalResult r;
        if (x >= detail::meijer_x_switch) {
            EvalResult gm = detail::meijer_raw(uu, x, -1, params);
            EvalResult gp = detail::meijer_raw(uu, x, +1, params);
            EvalResult g0 = detail::meijer_raw(uu, x, 0, params);
            const complex_t i1(0.0, 1.0);
            const complex_t cp = ccospi(uu), sp = csinpi(uu);
            r.value = -(cp + i1 * sp) * gm.value - (cp - i1 * sp) * gp.value - 2.0 * g0.value;
            r.terms_used = gm.terms_used + gp.terms_used + g0.terms_used;
            r.abs_error_estimate = gm.abs_error_estimate + gp.abs_error_estimate +
                                   2.0 * g0.abs_error_estimate +
                                   2e-16 * (std::abs(gm.value) + std::abs(gp.value));
            r.flags = gm.flags | gp.flags | g0.flags;
        } else {
            const double X = 1.0 / x;
            EvalResult ty = detail::tail_ty(uu, X, params);
            EvalResult k0 = detail::k0_mellin_tail(uu, X, params);
            r.value = -2.0 * std::numbers::pi * ty.value - 2.0 * k0.value;
            r.terms_used = ty.terms_used + k0.terms_used;
            r.abs_error_estimate =
                2.0 * std::numbers::pi * ty.abs_error_estimate + 2.0 * k0.abs_error_estimate;
            r.flags = ty.flags | k0.flags;
        }
        if (u.imag() == 0.0) {
            // real u: the combination is real; fold any residual phase
            // into the error budget
            r.abs_error_estimate += std::abs(r.value.imag());
            r.value = complex_t(r.value.real(), 0.0);
        }
        return r;
    });
}

// B_J(u, X) = int_0^X t^{-u} J0(2 sqrt t) dt, continued across Re u >= 1.
//   X <= 30: alternating series sum_k (-1)^k X^{k+1-u} / ((k!)^2 (k+1-u)).
//   X >  30: C_J(u) - T_J(u, X).
// At positive integer u the k = u-1 pole term is replaced by its
// finite part (-1)^{u-1} ln X / ((u-1)!)^2, and the large-X constant
// becomes 2 (-1)^{u-1} psi(u) / ((u-1)!)^2; flagged Regularized.
inline EvalResult bessel_moment(const complex_t& u, double X, const SeriesParams& params = {}) {
    params.validate();
    if (!(X > 0)) throw std::domain_error("bessel_moment: requires X > 0");

    long long n = 0;
    const bool integer_u = near_positive_integer(u, 1e-12, n);
    EvalResult r;

    if (X > 30.0) {
        if (integer_u) {
            double fact = 1.0;
            for (long long j = 2; j < n; ++j) fact *= static_cast<double>(j);
            double sign = (n % 2 == 1) ? 1.0 : -1.0;
            double cj = 2.0 * sign * digamma_int(n) / (fact * fact);
            EvalResult tj = detail::tail_tj(complex_t(static_cast<double>(n), 0.0), X, params);
            r.value = cj - tj.value;
            r.abs_error_estimate = tj.abs_error_estimate + 2e-16 * std::abs(cj);
            r.terms_used = tj.terms_used;
            r.flags = tj.flags | FlagRegularized;
            return r;
        }
        EvalResult tj = detail::tail_tj(u, X, params);
        complex_t cj = detail::mellin_cj(u);
        r.value = cj - tj.value;
        r.abs_error_estimate = tj.abs_error_estimate + 2e-16 * std::abs(cj);
        r.terms_used = tj.terms_used;
        r.flags = tj.flags;
        return r;
    }

    // ascending series; terms t_k = (-1)^k X^{k+1-u} / (k!)^2
    complex_t t = integer_u ? cpow(X, complex_t(1.0 - static_cast<double>(n), 0.0))
                            : cpow(X, complex_t(1.0, 0.0) - u);
    complex_t sum{0.0, 0.0};
    double peak = 0.0;
    std::size_t k = 0;
    const std::size_t k_min = static_cast<std::size_t>(2.0 * std::sqrt(X)) + 4;
    for (; k < params.max_terms; ++k) {
        complex_t term;
        if (integer_u && static_cast<long long>(k) == n - 1) {
            // finite part of the pole term
            double fact = 1.0;
            for (long long j = 2; j < n; ++j) fact *= static_cast<double>(j);
            double sign = (n % 2 == 1) ? 1.0 : -1.0;
            term = complex_t(sign * std::log(X) / (fact * fact), 0.0);
            r.flags |= FlagRegularized;
        } else {
            complex_t denom = integer_u
                                  ? complex_t(static_cast<double>(k) + 1.0 - static_cast<double>(n), 0.0)
                                  : (complex_t(static_cast<double>(k) + 1.0, 0.0) - u);
            term = t / denom;
        }
        sum += term;
        peak = std::max(peak, std::abs(term));
        if (k > k_min && std::abs(term) < params.tolerance * (1.0 + std::abs(sum))) {
            ++k;
            break;
        }
        t *= -X / ((static_cast<double>(k) + 1.0) * (static_cast<double>(k) + 1.0));
    }
    if (k >= params.max_terms) r.flags |= FlagTruncated;
    r.value = sum;
    r.terms_used = k;
    r.abs_error_estimate = peak * 2e-16 + params.tolerance * std::abs(sum);
    return r;
}

// int_a^inf x^{-u-1} sin x dx for Re u > -1, a > 0: numerical quadrature
// up to A0 = max(a, 40), then the integration-by-parts expansion whose
// remainder at A0 is far below double precision for these exponents.
inline EvalResult sine_tail_integral(const complex_t& u, double a, const SeriesParams& params = {}) {
    params.validate();
    if (!(a > 0)) throw std::domain_error("sine_tail_integral: requires a > 0");
    if (!(u.real() > -1.0))
        throw std::domain_error("sine_tail_integral: requires Re u > -1 for convergence");

    const double A = std::max(a, 40.0);
    EvalResult r;
    complex_t head{0.0, 0.0};
    if (A > a) {
        auto f = [&](double x) { return cpow(x, -u - complex_t(1.0, 0.0)) * std::sin(x); };
        auto q = adaptive_integrate(f, a, A, 1e-15, 0.1 * params.tolerance);
        head = q.value;
        r.abs_error_estimate += q.err;
        r.terms_used += q.evals;
    }

    // I_p = A^{-p} cos A + p A^{-p-1} sin A - p (p+1) I_{p+2},  p = u + 1
    const double cA = std::cos(A), sA = std::sin(A);
    complex_t coeff{1.0, 0.0};
    complex_t p = u + complex_t(1.0, 0.0);
    complex_t tail{0.0, 0.0};
    double prev_mag = 1e300;
    for (int j = 0; j < 40; ++j) {
        complex_t q = p + complex_t(2.0 * j, 0.0);
        complex_t term = coeff * (cpow(A, -q) * cA + q * cpow(A, -q - complex_t(1.0, 0.0)) * sA);
        double mag = std::abs(coeff * cpow(A, -q));
        if (mag >= prev_mag) {  // asymptotic tail turned; stop before it
            r.abs_error_estimate += mag;
            break;
        }
        tail += term;
        prev_mag = mag;
        coeff *= -q * (q + complex_t(1.0, 0.0));
        if (mag < 1e-18) break;
        r.terms_used += 1;
    }
    r.value = head + tail;
    r.abs_error_estimate += 2e-16 * std::abs(r.value);
    return r;
}

// A(x) = int_0^x log(4 / (1 + t^2)) / (1 + t^2) dt for x >= 0.
inline EvalResult zagier_A(double x, const SeriesParams& params = {}) {
    params.validate();
    if (!(x >= 0)) throw std::domain_error("zagier_A: requires x >= 0");
    EvalResult r;
    if (x == 0.0) return r;
    auto f = [](double t) {
        double w = 1.0 + t * t;
        return std::log(4.0 / w) / w;
    };
    auto q = adaptive_integrate(f, 0.0, x, 1e-16, 0.05 * params.tolerance);
    r.value = q.value;
    r.abs_error_estimate = q.err;
    r.terms_used = q.evals;
    return r;
}

// A_m(x) = (2^{2m-1} / (2m-1)!) int_0^inf t^{2m-1} / (x sinh^2 t + x^{-1} cosh^2 t) dt,
// m >= 1, x > 0. A_1 coincides with A.
inline EvalResult zagier_A_m(unsigned m, double x, const SeriesParams& params = {}) {
    params.validate();
    if (m < 1) throw std::domain_error("zagier_A_m: requires m >= 1");
    if (!(x > 0)) throw std::domain_error("zagier_A_m: requires x > 0");
    const double T = 40.0 + 5.0 * m;
    const double ix = 1.0 / x;
    auto f = [&](double t) {
        double sh = std::sinh(t), ch = std::cosh(t);
        return std::pow(t, 2.0 * m - 1.0) / (x * sh * sh + ix * ch * ch);
    };
    auto q = adaptive_integrate(f, 0.0, T, 1e-16, 0.05 * params.tolerance);
    double pref = std::ldexp(1.0, static_cast<int>(2 * m - 1));
    for (unsigned j = 2; j <= 2 * m - 1; ++j) pref /= static_cast<double>(j);
    EvalResult r;
    r.value = pref * q.value;
    r.abs_error_estimate = pref * q.err;
    r.terms_used = q.evals;
    return r;
}

}  // namespace zetaforge

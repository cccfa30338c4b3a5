#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "zetaforge/arithmetic.hpp"
#include "zetaforge/core.hpp"
#include "zetaforge/specialfn.hpp"
#include "zetaforge/zetavalues.hpp"

namespace zetaforge {

struct WiltonReport {
    long long d = 0;  // 0 marks the rational case
    complex_t u{0.0, 0.0}, v{0.0, 0.0};
    std::size_t M = 0;
    complex_t lhs{0.0, 0.0};
    complex_t rhs{0.0, 0.0};
    double abs_difference = 0.0;
    double tail_estimate = 0.0;
    unsigned flags = 0;
    std::vector<double> leading_term_mags;  // u-branch, first dozen terms
};

namespace detail {

inline void check_uv_common(const complex_t& u, const complex_t& v) {
    if (std::abs(u - complex_t(1.0, 0.0)) < 1e-9)
        throw std::domain_error("wilton: u = 1 is excluded (1/(u-1) pole)");
    if (std::abs(v - complex_t(1.0, 0.0)) < 1e-9)
        throw std::domain_error("wilton: v = 1 is excluded (1/(v-1) pole)");
    if (std::abs(u + v - complex_t(2.0, 0.0)) < 1e-9)
        throw std::domain_error("wilton: u + v = 2 is excluded (zeta(u+v-1) pole)");
}

struct RhsValue {
    complex_t value{0.0, 0.0};
    double err = 0.0;
    double tail = 0.0;
    unsigned flags = 0;
    std::size_t terms_used = 0;
    std::vector<double> leading_term_mags;
};

}  // namespace detail

// Rational-case right-hand side:
//   zeta(u+v-1) (1/(u-1) + 1/(v-1))
//     + sum over w in {u, v} of 2 (2 pi)^{w-1} w
//         sum_n sigma_{1-u-v}(n) n^{w-1} int_{2 pi n}^inf x^{-w-1} sin x dx
// The n > M remainder is resummed analytically through the first two
// orders of the asymptotic sine-tail expansion, which turns into
// zeta(2+2j) zeta(1+2j+u+v) minus the matching partial sums; the third
// order bounds what is left and is reported as the tail estimate.
inline detail::RhsValue wilton_rhs_rational(const complex_t& u, const complex_t& v, std::size_t M,
                                            const SeriesParams& params = {}) {
    params.validate();
    detail::check_uv_common(u, v);
    if (!(u.real() > -1.0) || !(v.real() > -1.0))
        throw std::domain_error("wilton: requires Re u > -1 and Re v > -1");
    if (!((u + v).real() > 0.0))
        throw std::domain_error("wilton: requires Re(u + v) > 0");
    if (M < 1) throw std::domain_error("wilton: requires M >= 1");

    const double two_pi = 2.0 * std::numbers::pi;
    const complex_t one(1.0, 0.0);
    const complex_t z = one - u - v;

    detail::RhsValue out;
    EvalResult zmain = detail::zeta_em(u + v - one, params);
    out.value = zmain.value * (one / (u - one) + one / (v - one));
    out.err += zmain.abs_error_estimate * std::abs(one / (u - one) + one / (v - one));

    std::vector<complex_t> sig(M + 1);
    for (std::size_t n = 1; n <= M; ++n) sig[n] = divisor_sigma(z, static_cast<long long>(n));

    // partial sums of sigma_z(n) n^{-2-2j} feeding the tail resummation
    complex_t part[3] = {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
    for (std::size_t n = 1; n <= M; ++n)
        for (int j = 0; j < 3; ++j)
            part[j] += sig[n] * cpow(static_cast<double>(n), complex_t(-2.0 - 2.0 * j, 0.0));

    for (int which = 0; which < 2; ++which) {
        const complex_t w = which == 0 ? u : v;
        const complex_t pref = 2.0 * cpow(two_pi, w - one) * w;

        complex_t sum{0.0, 0.0};
        for (std::size_t n = 1; n <= M; ++n) {
            EvalResult I = sine_tail_integral(w, two_pi * static_cast<double>(n), params);
            complex_t term = sig[n] * cpow(static_cast<double>(n), w - one) * I.value;
            sum += term;
            out.err += std::abs(pref) * std::abs(sig[n] * cpow(static_cast<double>(n), w - one)) *
                       I.abs_error_estimate;
            out.terms_used += I.terms_used;
            if (which == 0 && n <= 12) out.leading_term_mags.push_back(std::abs(pref * term));
        }

        // analytic remainder, orders j = 0, 1 of I_n ~ sum_j (-1)^j d_j (2 pi n)^{-w-1-2j}
        complex_t dj{1.0, 0.0};
        for (int j = 0; j < 2; ++j) {
            if (j > 0) dj *= (w + complex_t(2.0 * j - 1.0, 0.0)) * (w + complex_t(2.0 * j, 0.0));
            EvalResult za = detail::zeta_em(complex_t(2.0 + 2.0 * j, 0.0), params);
            EvalResult zb = detail::zeta_em(complex_t(1.0 + 2.0 * j, 0.0) + u + v, params);
            complex_t full = za.value * zb.value;
            double sgn = (j % 2) ? -1.0 : 1.0;
            sum += sgn * dj * cpow(two_pi, -w - complex_t(1.0 + 2.0 * j, 0.0)) * (full - part[j]);
            out.err += std::abs(dj) * std::pow(two_pi, -w.real() - 1.0 - 2.0 * j) *
                       (za.abs_error_estimate + zb.abs_error_estimate);
        }
        // third order bounds the truncation of the resummation itself
        complex_t d2 = dj * (w + complex_t(3.0, 0.0)) * (w + complex_t(4.0, 0.0));
        EvalResult za = detail::zeta_em(complex_t(6.0, 0.0), params);
        EvalResult zb = detail::zeta_em(complex_t(5.0, 0.0) + u + v, params);
        out.tail += std::abs(pref) * std::abs(d2) * std::pow(two_pi, -w.real() - 5.0) *
                    std::abs(za.value * zb.value - part[2]);

        out.value += pref * sum;
    }
    if (out.tail > params.tolerance * (1.0 + std::abs(out.value))) out.flags |= FlagTruncated;
    return out;
}

// Real-field right-hand side:
//   (4 h R / (w sqrt D)) (1/(u-1) + 1/(v-1)) zeta_K(u+v-1)
//     - sum over w in {u, v} of 2 (2 pi)^{2(w-1)} D^{(1-2w)/2}
//         sum_m sigma'_{1-u-v}(m) m^{w-1} combo(w; D / (4 pi^2 m))
// where combo is the three-phase G combination. Terms are computed out
// to 2M: the first M make the value, the second block calibrates the
// tail estimate of the conditionally convergent remainder.
inline detail::RhsValue wilton_rhs_real_quadratic(const Discriminant& D, const complex_t& u,
                                                  const complex_t& v, std::size_t M,
                                                  const SeriesParams& params = {}) {
    params.validate();
    if (!D.real()) throw std::domain_error("wilton: real-field form requires D > 0");
    detail::check_uv_common(u, v);
    if (!((u + v - complex_t(1.0, 0.0)).real() > 0.05))
        throw std::domain_error("wilton: requires Re(u + v - 1) > 0.05 for the factored value");
    if (M < 1) throw std::domain_error("wilton: requires M >= 1");

    FieldInvariants inv = field_invariants(D);
    const double pi = std::numbers::pi;
    const double two_pi = 2.0 * pi;
    const double sqrtD = std::sqrt(static_cast<double>(D.value));
    const complex_t one(1.0, 0.0);
    const complex_t z = one - u - v;

    detail::RhsValue out;
    ZetaValue zk = dedekind_zeta_factored(D, u + v - one, params);
    const complex_t poles = one / (u - one) + one / (v - one);
    const double afac = 4.0 * inv.h * inv.reg / (inv.w * sqrtD);
    out.value = afac * poles * zk.value;
    out.err += afac * std::abs(poles) * zk.abs_error_estimate;
    out.flags |= zk.flags;

    for (int which = 0; which < 2; ++which) {
        const complex_t w = which == 0 ? u : v;
        const complex_t pref = 2.0 * cpow(two_pi, 2.0 * (w - one)) *
                               cpow(static_cast<double>(D.value), (one - 2.0 * w) / 2.0);
        complex_t head{0.0, 0.0}, block{0.0, 0.0};
        double first_tail_term = 0.0;
        for (std::size_t m = 1; m <= 2 * M; ++m) {
            double x = static_cast<double>(D.value) / (4.0 * pi * pi * static_cast<double>(m));
            complex_t sp = sigma_prime(inv.chi, z, static_cast<long long>(m));
            complex_t term{0.0, 0.0};
            if (sp != complex_t(0.0, 0.0)) {
                EvalResult combo = wilton_g_combo(w, x, params);
                term = sp * cpow(static_cast<double>(m), w - one) * combo.value;
                out.err += std::abs(pref) * std::abs(sp * cpow(static_cast<double>(m), w - one)) *
                           combo.abs_error_estimate;
                out.flags |= combo.flags;
                out.terms_used += combo.terms_used;
            }
            if (m <= M) {
                head += term;
                if (which == 0 && m <= 12)
                    out.leading_term_mags.push_back(std::abs(pref * term));
            } else {
                block += term;
                if (m == M + 1) first_tail_term = std::abs(pref * term);
            }
        }
        out.value -= pref * head;
        out.tail += 3.0 * std::max(std::abs(pref * block), first_tail_term);
    }
    if (out.tail > params.tolerance * (1.0 + std::abs(out.value))) out.flags |= FlagTruncated;
    return out;
}

// Imaginary-field right-hand side:
//   (2 pi h / (w sqrt|D|)) (1/(u-1) + 1/(v-1)) zeta_K(u+v-1)
//     - sum over w in {u, v} of (2 pi)^{2w-1} |D|^{(1-2w)/2}
//         sum_m sigma'_{1-u-v}(m) m^{w-1} B_J(w; 4 pi^2 m / |D|)
// B_J is the Bessel moment, read in its continued sense once Re w >= 1
// (surfaced through the Regularized flag).
inline detail::RhsValue wilton_rhs_imaginary_quadratic(const Discriminant& D, const complex_t& u,
                                                       const complex_t& v, std::size_t M,
                                                       const SeriesParams& params = {}) {
    params.validate();
    if (D.real()) throw std::domain_error("wilton: imaginary-field form requires D < 0");
    detail::check_uv_common(u, v);
    if (!((u + v - complex_t(1.0, 0.0)).real() > 0.05))
        throw std::domain_error("wilton: requires Re(u + v - 1) > 0.05 for the factored value");
    if (M < 1) throw std::domain_error("wilton: requires M >= 1");

    FieldInvariants inv = field_invariants(D);
    const double pi = std::numbers::pi;
    const double two_pi = 2.0 * pi;
    const double f = static_cast<double>(D.abs());
    const complex_t one(1.0, 0.0);
    const complex_t z = one - u - v;

    detail::RhsValue out;
    ZetaValue zk = dedekind_zeta_factored(D, u + v - one, params);
    const complex_t poles = one / (u - one) + one / (v - one);
    const double afac = 2.0 * pi * inv.h / (inv.w * std::sqrt(f));
    out.value = afac * poles * zk.value;
    out.err += afac * std::abs(poles) * zk.abs_error_estimate;
    out.flags |= zk.flags;
    if (u.real() >= 1.0 || v.real() >= 1.0) out.flags |= FlagRegularized;

    for (int which = 0; which < 2; ++which) {
        const complex_t w = which == 0 ? u : v;
        const complex_t pref = cpow(two_pi, 2.0 * w - one) * cpow(f, (one - 2.0 * w) / 2.0);
        complex_t head{0.0, 0.0}, block{0.0, 0.0};
        double first_tail_term = 0.0;
        for (std::size_t m = 1; m <= 2 * M; ++m) {
            double X = 4.0 * pi * pi * static_cast<double>(m) / f;
            complex_t sp = sigma_prime(inv.chi, z, static_cast<long long>(m));
            complex_t term{0.0, 0.0};
            if (sp != complex_t(0.0, 0.0)) {
                EvalResult bj = bessel_moment(w, X, params);
                term = sp * cpow(static_cast<double>(m), w - one) * bj.value;
                out.err += std::abs(pref) * std::abs(sp * cpow(static_cast<double>(m), w - one)) *
                           bj.abs_error_estimate;
                out.flags |= bj.flags;
                out.terms_used += bj.terms_used;
            }
            if (m <= M) {
                head += term;
                if (which == 0 && m <= 12)
                    out.leading_term_mags.push_back(std::abs(pref * term));
            } else {
                block += term;
                if (m == M + 1) first_tail_term = std::abs(pref * term);
            }
        }
        out.value -= pref * head;
        out.tail += 3.0 * std::max(std::abs(pref * block), first_tail_term);
    }
    if (out.tail > params.tolerance * (1.0 + std::abs(out.value))) out.flags |= FlagTruncated;
    return out;
}

// Evaluate both sides at (u, v) with the m-sums cut at M. d = 0 runs the
// rational form; otherwise d must be a fundamental discriminant.
inline WiltonReport verify(long long d, const complex_t& u, const complex_t& v, std::size_t M,
                           const SeriesParams& params = {}) {
    WiltonReport rep;
    rep.d = d;
    rep.u = u;
    rep.v = v;
    rep.M = M;
    if (d == 0) {
        detail::RhsValue rhs = wilton_rhs_rational(u, v, M, params);
        EvalResult zu = detail::zeta_em(u, params);
        EvalResult zv = detail::zeta_em(v, params);
        rep.lhs = zu.value * zv.value;
        rep.rhs = rhs.value;
        rep.tail_estimate = rhs.tail;
        rep.flags = rhs.flags;
        rep.leading_term_mags = std::move(rhs.leading_term_mags);
    } else {
        Discriminant D(d);
        detail::RhsValue rhs = D.real() ? wilton_rhs_real_quadratic(D, u, v, M, params)
                                        : wilton_rhs_imaginary_quadratic(D, u, v, M, params);
        ZetaValue zu = dedekind_zeta_factored(D, u, params);
        ZetaValue zv = dedekind_zeta_factored(D, v, params);
        rep.lhs = zu.value * zv.value;
        rep.rhs = rhs.value;
        rep.tail_estimate = rhs.tail;
        rep.flags = rhs.flags | zu.flags | zv.flags;
        rep.leading_term_mags = std::move(rhs.leading_term_mags);
    }
    rep.abs_difference = std::abs(rep.lhs - rep.rhs);
    return rep;
}

// verify at each cutoff of a strictly increasing list of M values.
inline std::vector<WiltonReport> convergence_sweep(long long d, const complex_t& u,
                                                   const complex_t& v,
                                                   const std::vector<std::size_t>& cutoffs,
                                                   const SeriesParams& params = {}) {
    if (cutoffs.empty()) throw std::invalid_argument("convergence_sweep: empty cutoff list");
    for (std::size_t i = 1; i < cutoffs.size(); ++i)
        if (cutoffs[i] <= cutoffs[i - 1])
            throw std::invalid_argument("convergence_sweep: cutoffs must be strictly increasing");
    std::vector<WiltonReport> out;
    out.reserve(cutoffs.size());
    for (std::size_t M : cutoffs) out.push_back(verify(d, u, v, M, params));
    return out;
}

}  // namespace zetaforge

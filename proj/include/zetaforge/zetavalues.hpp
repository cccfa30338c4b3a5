#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "zetaforge/arithmetic.hpp"
#include "zetaforge/core.hpp"
#include "zetaforge/exactnum.hpp"
#include "zetaforge/gamma.hpp"
#include "zetaforge/specialfn.hpp"

namespace zetaforge {

enum class Route { DirectSeries, Factored, ClosedForm, Zagier, WiltonDerived };

inline const char* route_name(Route r) {
    switch (r) {
        case Route::DirectSeries: return "direct";
        case Route::Factored: return "factored";
        case Route::ClosedForm: return "closed";
        case Route::Zagier: return "zagier";
        case Route::WiltonDerived: return "wilton";
    }
    return "unknown";
}

struct ZetaValue {
    complex_t value{0.0, 0.0};
    double abs_error_estimate = 0.0;
    Route route = Route::DirectSeries;
    unsigned flags = 0;
    std::size_t terms_used = 0;
};

namespace detail {

inline double factorial_d(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f.get_d();
}

inline ExactRational exact_factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return ExactRational(f);
}

inline ExactRational exact_int_pow(long base, unsigned long e) {
    mpz_class r;
    mpz_class b(base);
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return ExactRational(r);
}

}  // namespace detail

// Hurwitz zeta by Euler-Maclaurin: the workhorse behind the L-series
// and the continuation of zeta into the critical strip.
inline EvalResult hurwitz_zeta(const complex_t& s, double a, const SeriesParams& params = {}) {
    params.validate();
    if (!(a > 0)) throw std::domain_error("hurwitz_zeta: requires a > 0");
    if (std::abs(s - complex_t(1.0, 0.0)) < 1e-12)
        throw std::domain_error("hurwitz_zeta: pole at s = 1");

    const int N = 24 + static_cast<int>(0.75 * std::abs(s.imag()));
    const int J = 12;
    static const std::vector<double> bern_over_fact = [] {
        std::vector<double> v;
        for (int j = 1; j <= 13; ++j)
            v.push_back(to_double(bernoulli_number(2 * j) / detail::exact_factorial(2 * j)));
        return v;
    }();

    complex_t sum{0.0, 0.0};
    for (int k = 0; k < N; ++k) sum += cpow(a + k, -s);
    const double Na = a + N;
    sum += cpow(Na, complex_t(1.0, 0.0) - s) / (s - complex_t(1.0, 0.0));
    sum += 0.5 * cpow(Na, -s);

    complex_t poch{1.0, 0.0};  // s (s+1) ... (s + 2j - 2)
    for (int j = 1; j <= J; ++j) {
        poch *= (j == 1) ? s : (s + complex_t(2.0 * j - 3.0, 0.0)) * (s + complex_t(2.0 * j - 2.0, 0.0));
        sum += bern_over_fact[j - 1] * poch * cpow(Na, -s - complex_t(2.0 * j - 1.0, 0.0));
    }
    complex_t next_poch = poch * (s + complex_t(2.0 * J - 1.0, 0.0)) * (s + complex_t(2.0 * J, 0.0));
    EvalResult r;
    r.value = sum;
    r.abs_error_estimate =
        std::abs(bern_over_fact[J] * next_poch * cpow(Na, -s - complex_t(2.0 * J + 1.0, 0.0))) +
        2e-16 * static_cast<double>(N) * std::abs(sum);
    r.terms_used = static_cast<std::size_t>(N + J);
    return r;
}

namespace detail {

// Continued zeta for internal consumers; valid for Re s > -20ish, s != 1.
inline EvalResult zeta_em(const complex_t& s, const SeriesParams& params = {}) {
    return hurwitz_zeta(s, 1.0, params);
}

}  // namespace detail

// Literal Dirichlet series sum_{n <= max_terms} n^{-s}, Re s > 1 only.
// The tail bound M^{1-sigma}/(sigma-1) is reported, not folded in.
inline ZetaValue riemann_zeta_direct(const complex_t& s, const SeriesParams& params = {}) {
    params.validate();
    if (!(s.real() > 1.0))
        throw std::domain_error("riemann_zeta_direct: requires Re s > 1");
    ZetaValue z;
    z.route = Route::DirectSeries;
    complex_t sum{0.0, 0.0};
    const std::size_t M = params.max_terms;
    for (std::size_t n = 1; n <= M; ++n) sum += cpow(static_cast<double>(n), -s);
    z.value = sum;
    z.terms_used = M;
    const double sigma = s.real();
    z.abs_error_estimate = std::pow(static_cast<double>(M), 1.0 - sigma) / (sigma - 1.0);
    if (z.abs_error_estimate > params.tolerance) z.flags |= FlagTruncated;
    return z;
}

// zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!), exposed with the
// exact rational coefficient of pi^{2n}.
struct EvenZeta {
    ZetaValue zeta;
    ExactRational pi_coefficient;  // zeta(2n) = pi_coefficient * pi^{2n}
    unsigned pi_power;
};

inline EvenZeta riemann_zeta_even(unsigned n) {
    if (n < 1) throw std::domain_error("riemann_zeta_even: requires n >= 1");
    ExactRational c = bernoulli_number(2 * n) * detail::exact_int_pow(2, 2 * n) /
                      (2 * detail::exact_factorial(2 * n));
    if (n % 2 == 0) c = -c;  // (-1)^{n+1}
    c.canonicalize();
    EvenZeta out{ZetaValue{}, c, 2 * n};
    out.zeta.route = Route::ClosedForm;
    out.zeta.value = to_double(c) * std::pow(std::numbers::pi, 2.0 * n);
    out.zeta.abs_error_estimate = 4e-16 * std::abs(out.zeta.value);
    return out;
}

// L(s, chi_D) through the Hurwitz decomposition
//   L(s, chi) = f^{-s} sum_{a=1}^{f-1} chi(a) zeta(s, a/f),
// valid into the strip. At s = 1 the digamma form takes over; terms with
// chi(a) = 0 are skipped (the a = f term would otherwise inject the
// zeta(s, 1) pole).
inline ZetaValue dirichlet_L_direct(const Discriminant& D, const complex_t& s,
                                    const SeriesParams& params = {}) {
    params.validate();
    if (!(s.real() > 0.05))
        throw std::domain_error("dirichlet_L_direct: supported range is Re s > 0.05");
    ZetaValue z;
    z.route = Route::DirectSeries;
    const long long f = D.abs();

    if (s == complex_t(1.0, 0.0)) {
        z.value = l_one_exact(D);
        z.abs_error_estimate = 1e-14 * static_cast<double>(f);
        z.terms_used = static_cast<std::size_t>(f);
        return z;
    }

    complex_t sum{0.0, 0.0};
    double err = 0.0;
    std::size_t terms = 0;
    for (long long a = 1; a < f; ++a) {
        int c = kronecker_symbol(D, a);
        if (!c) continue;
        EvalResult h = hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(f), params);
        sum += static_cast<double>(c) * h.value;
        err += h.abs_error_estimate;
        terms += h.terms_used;
    }
    const complex_t scale = cpow(static_cast<double>(f), -s);
    z.value = scale * sum;
    z.abs_error_estimate = std::abs(scale) * err;
    if (std::abs(s - complex_t(1.0, 0.0)) < 1e-3) {
        // individual Hurwitz poles cancel across the character sum;
        // account for the cancellation noise they leave behind
        z.abs_error_estimate +=
            static_cast<double>(f) * 1e-16 / std::abs(s - complex_t(1.0, 0.0));
    }
    z.terms_used = terms;
    return z;
}

namespace detail {

// L(n, chi) for primitive chi with chi(-1) = (-1)^n:
//   L(n, chi) = (-1)^{1+(n-delta)/2} (tau(chi) / (2 i^delta)) (2 pi / f)^n B_{n,chi} / n!
// The i^delta cancels against tau, leaving a real value in both parities.
inline ZetaValue dirichlet_L_closed_impl(const Discriminant& D, unsigned n) {
    const long long f = D.abs();
    ExactRational core = generalized_bernoulli(D, n) * exact_int_pow(2, n) /
                         (2 * exact_factorial(n) * exact_int_pow(f, n));
    // (-1)^{1 + (n - delta)/2}, delta = parity of n
    unsigned half = (n - (n % 2)) / 2;
    int sign = (half % 2 == 0) ? -1 : 1;
    core *= sign;
    core.canonicalize();
    // tau / (2 i^delta) contributes sqrt(f) / 2; the 1/2 is already in core
    ZetaValue z;
    z.route = Route::ClosedForm;
    z.value = to_double(core) * std::pow(std::numbers::pi, static_cast<double>(n)) *
              std::sqrt(static_cast<double>(f));
    z.abs_error_estimate = 4e-16 * std::abs(z.value);
    return z;
}

}  // namespace detail

// L(2n, chi_D) for real fields (even character), exact closed form.
inline ZetaValue dirichlet_L_even_closed(const Discriminant& D, unsigned n) {
    if (!D.real())
        throw std::domain_error("dirichlet_L_even_closed: requires D > 0 (even character)");
    if (n < 1) throw std::domain_error("dirichlet_L_even_closed: requires n >= 1");
    return detail::dirichlet_L_closed_impl(D, 2 * n);
}

// L(2k+1, chi_D) for imaginary fields (odd character), exact closed form.
inline ZetaValue dirichlet_L_odd_closed(const Discriminant& D, unsigned k) {
    if (D.real())
        throw std::domain_error("dirichlet_L_odd_closed: requires D < 0 (odd character)");
    return detail::dirichlet_L_closed_impl(D, 2 * k + 1);
}

// Literal Dedekind series sum_m v(m) m^{-s} over m <= max_terms, with the
// ideal-count coefficients sieved in one divisor pass. The error estimate
// is the exact tail of the dominating series sum_{m > M} d(m) m^{-sigma}.
inline ZetaValue dedekind_zeta_direct(const Discriminant& D, const complex_t& s,
                                      const SeriesParams& params = {}) {
    params.validate();
    if (!(s.real() > 1.0))
        throw std::domain_error("dedekind_zeta_direct: requires Re s > 1");
    ZetaValue z;
    z.route = Route::DirectSeries;
    const std::size_t M = params.max_terms;
    CharacterTable chi = CharacterTable::build(D);

    std::vector<int> v(M + 1, 0), d(M + 1, 0);
    for (std::size_t t = 1; t <= M; ++t) {
        int c = chi(static_cast<long long>(t));
        for (std::size_t j = t; j <= M; j += t) {
            v[j] += c;
            d[j] += 1;
        }
    }

    const double sigma = s.real();
    complex_t sum{0.0, 0.0};
    double dsum = 0.0;
    for (std::size_t m = 1; m <= M; ++m) {
        if (v[m]) sum += static_cast<double>(v[m]) * cpow(static_cast<double>(m), -s);
        dsum += d[m] * std::pow(static_cast<double>(m), -sigma);
    }
    EvalResult zs = detail::zeta_em(complex_t(sigma, 0.0), params);
    double envelope = std::abs(zs.value) * std::abs(zs.value) - dsum;
    z.value = sum;
    z.terms_used = M;
    z.abs_error_estimate = std::max(envelope, 0.0) + 1e-16 * dsum;
    if (z.abs_error_estimate > params.tolerance) z.flags |= FlagTruncated;
    return z;
}

// zeta_K(s) = zeta(s) L(s, chi_D); both factors continued, so valid on
// Re s > 0.05 minus the pole at s = 1.
inline ZetaValue dedekind_zeta_factored(const Discriminant& D, const complex_t& s,
                                        const SeriesParams& params = {}) {
    params.validate();
    if (std::abs(s - complex_t(1.0, 0.0)) < 1e-9)
        throw std::domain_error("dedekind_zeta_factored: pole at s = 1");
    if (!(s.real() > 0.05))
        throw std::domain_error("dedekind_zeta_factored: supported range is Re s > 0.05");
    EvalResult zs = detail::zeta_em(s, params);
    ZetaValue L = dirichlet_L_direct(D, s, params);
    ZetaValue z;
    z.route = Route::Factored;
    z.value = zs.value * L.value;
    z.abs_error_estimate = std::abs(zs.value) * L.abs_error_estimate +
                           std::abs(L.value) * zs.abs_error_estimate;
    z.flags = L.flags;
    z.terms_used = zs.terms_used + L.terms_used;
    return z;
}

// Real-field even values in closed form:
//   zeta_K(2n) = tau(chi) (2 pi)^{4n} B_{2n} B_{2n,chi} / (4 ((2n)!)^2 D^{2n}).
inline ZetaValue dedekind_zeta_even_real_closed(const Discriminant& D, unsigned n) {
    if (!D.real())
        throw std::domain_error("dedekind_zeta_even_real_closed: requires D > 0");
    if (n < 1) throw std::domain_error("dedekind_zeta_even_real_closed: requires n >= 1");
    ExactRational core = bernoulli_number(2 * n) * generalized_bernoulli(D, 2 * n) *
                         detail::exact_int_pow(2, 4 * n) /
                         (4 * detail::exact_factorial(2 * n) * detail::exact_factorial(2 * n) *
                          detail::exact_int_pow(D.value, 2 * n));
    core.canonicalize();
    ZetaValue z;
    z.route = Route::ClosedForm;
    z.value = to_double(core) * std::pow(std::numbers::pi, 4.0 * n) *
              std::sqrt(static_cast<double>(D.value));
    z.abs_error_estimate = 4e-16 * std::abs(z.value);
    if (to_double(core) == 0.0)
        throw std::runtime_error("dedekind_zeta_even_real_closed: rational core underflowed");
    return z;
}

// S_n(r) = sum_k 1 / (k^n (e^{pi r k} - 1)).
inline EvalResult ramanujan_S(unsigned n, double r, const SeriesParams& params = {}) {
    params.validate();
    if (n < 1) throw std::domain_error("ramanujan_S: requires n >= 1");
    if (!(r > 0)) throw std::domain_error("ramanujan_S: requires r > 0");
    EvalResult out;
    const double pr = std::numbers::pi * r;
    double sum = 0.0;
    std::size_t k = 1;
    for (; k <= params.max_terms; ++k) {
        double e = std::exp(-pr * k);
        if (e < 1e-19) break;
        sum += e / (std::pow(static_cast<double>(k), static_cast<double>(n)) * (1.0 - e));
    }
    if (k > params.max_terms) out.flags |= FlagTruncated;
    out.value = sum;
    out.terms_used = k;
    out.abs_error_estimate = std::exp(-pr * (k + 1)) + 1e-16 * sum;
    return out;
}

// Transformation check for the odd-zeta lattice sums: with beta = pi^2/alpha,
//   alpha^{-n} (zeta(2n+1)/2 + S_{2n+1}(2 alpha / pi))
//     = (-beta)^{-n} (zeta(2n+1)/2 + S_{2n+1}(2 beta / pi))
//       - 2^{2n} sum_{k=0}^{n+1} (-1)^k B_{2k} B_{2n+2-2k} / ((2k)! (2n+2-2k)!) alpha^{n+1-k} beta^k.
struct RamanujanIdentity {
    double lhs;
    double rhs;
    double residual;
};

inline RamanujanIdentity ramanujan_identity_check(unsigned n, double alpha,
                                                  const SeriesParams& params = {}) {
    params.validate();
    if (n < 1) throw std::domain_error("ramanujan_identity_check: requires n >= 1");
    if (!(alpha > 0)) throw std::domain_error("ramanujan_identity_check: requires alpha > 0");
    const double pi = std::numbers::pi;
    const double beta = pi * pi / alpha;
    EvalResult Sa = ramanujan_S(2 * n + 1, 2.0 * alpha / pi, params);
    EvalResult Sb = ramanujan_S(2 * n + 1, 2.0 * beta / pi, params);
    double zv = detail::zeta_em(complex_t(2.0 * n + 1.0, 0.0), params).value.real();

    double lhs = std::pow(alpha, -static_cast<double>(n)) * (0.5 * zv + Sa.value.real());
    double rhs = (n % 2 ? -1.0 : 1.0) * std::pow(beta, -static_cast<double>(n)) *
                 (0.5 * zv + Sb.value.real());
    double poly = 0.0;
    for (unsigned k = 0; k <= n + 1; ++k) {
        ExactRational c = bernoulli_number(2 * k) * bernoulli_number(2 * n + 2 - 2 * k) /
                          (detail::exact_factorial(2 * k) * detail::exact_factorial(2 * n + 2 - 2 * k));
        double sgn = (k % 2) ? -1.0 : 1.0;
        poly += sgn * to_double(c) * std::pow(alpha, static_cast<double>(n + 1 - k)) *
                std::pow(beta, static_cast<double>(k));
    }
    rhs -= std::ldexp(1.0, static_cast<int>(2 * n)) * poly;
    return {lhs, rhs, std::abs(lhs - rhs)};
}

namespace detail {

// F_j = sum_{k=0}^{j+1} (-1)^k B_{2k} B_{2j+2-2k} / ((2k)! (2j+2-2k)!)
inline ExactRational cl_f_sum(unsigned j) {
    ExactRational acc(0);
    for (unsigned k = 0; k <= j + 1; ++k) {
        ExactRational t = bernoulli_number(2 * k) * bernoulli_number(2 * j + 2 - 2 * k) /
                          (exact_factorial(2 * k) * exact_factorial(2 * j + 2 - 2 * k));
        if (k % 2) t = -t;
        acc += t;
    }
    acc.canonicalize();
    return acc;
}

// G_j = same sum with (-4)^k in place of (-1)^k
inline ExactRational cl_g_sum(unsigned j) {
    ExactRational acc(0);
    for (unsigned k = 0; k <= j + 1; ++k) {
        ExactRational t = bernoulli_number(2 * k) * bernoulli_number(2 * j + 2 - 2 * k) /
                          (exact_factorial(2 * k) * exact_factorial(2 * j + 2 - 2 * k));
        ExactRational w = exact_int_pow(-4, k);
        acc += w * t;
    }
    acc.canonicalize();
    return acc;
}

// H_m = sum_{k=0}^{m} (-4)^{m+k} B_{4k} B_{4m+2-4k} / ((4k)! (4m+2-4k)!)
inline ExactRational cl_h_sum(unsigned m) {
    ExactRational acc(0);
    for (unsigned k = 0; k <= m; ++k) {
        ExactRational t = bernoulli_number(4 * k) * bernoulli_number(4 * m + 2 - 4 * k) /
                          (exact_factorial(4 * k) * exact_factorial(4 * m + 2 - 4 * k));
        acc += exact_int_pow(-4, m + k) * t;
    }
    acc.canonicalize();
    return acc;
}

}  // namespace detail

// Exact rational scaffolding for the lattice-sum odd-zeta formulas.
// F and G carry index 2m-1 (the 4m-1 family); Km, Em, Hm belong to the
// 4m+1 family, whose evaluator pulls G at index 2m internally.
struct CLCoefficients {
    unsigned m;
    ExactRational F;   // F_{2m-1}
    ExactRational G;   // G_{2m-1}
    ExactRational Dm;  // 4^{2m-1} ((4^{2m-1} + 1) F_{2m-1} - G_{2m-1}) / 2
    ExactRational Km;  // (1 - 4^{2m}) / (2 (1 + (-4)^m - 2^{4m+1}))
    ExactRational Em;  // (4^{2m}/2) G_{2m} - 2^{4m+1} Km Hm - 2^{4m} Km G_{2m}
    ExactRational Hm;
};

inline CLCoefficients cl_coefficients(unsigned m) {
    if (m < 1) throw std::domain_error("cl_coefficients: requires m >= 1");
    CLCoefficients c;
    c.m = m;
    c.F = detail::cl_f_sum(2 * m - 1);
    c.G = detail::cl_g_sum(2 * m - 1);
    ExactRational p4 = detail::exact_int_pow(4, 2 * m - 1);
    c.Dm = p4 * ((p4 + 1) * c.F - c.G) / 2;
    c.Dm.canonicalize();
    ExactRational p16 = detail::exact_int_pow(4, 2 * m);
    c.Km = (1 - p16) / (2 * (1 + detail::exact_int_pow(-4, m) - detail::exact_int_pow(2, 4 * m + 1)));
    c.Km.canonicalize();
    c.Hm = detail::cl_h_sum(m);
    ExactRational g2m = detail::cl_g_sum(2 * m);
    ExactRational p2_4m = detail::exact_int_pow(2, 4 * m);
    c.Em = p16 / 2 * g2m - 2 * p2_4m * c.Km * c.Hm - p2_4m * c.Km * g2m;
    c.Em.canonicalize();
    return c;
}

// zeta(n) for odd n >= 3 from three exponential lattice sums
// S_n(r) = ramanujan_S(n, r) at r = 1, 2, 4 with exact rational weights.
// n = 3 mod 4 uses the F/G/D_m family; n = 1 mod 4 the G/K/E/H family.
inline ZetaValue zeta_odd_closed(unsigned n, const SeriesParams& params = {}) {
    params.validate();
    if (n < 3 || n % 2 == 0)
        throw std::domain_error("zeta_odd_closed: requires odd n >= 3");

    ExactRational c1, c2, c3;
    if (n % 4 == 3) {
        unsigned m = (n + 1) / 4;
        CLCoefficients c = cl_coefficients(m);
        ExactRational q_hi = detail::exact_int_pow(4, 4 * m - 2);
        ExactRational q_lo = detail::exact_int_pow(4, 2 * m - 1);
        c1 = -c.F * q_hi / c.Dm;
        c2 = c.G * q_lo / c.Dm;
        c3 = -c.F * q_lo / c.Dm;
    } else {
        unsigned m = (n - 1) / 4;
        CLCoefficients c = cl_coefficients(m);
        ExactRational g2m = detail::cl_g_sum(2 * m);
        ExactRational s16 = detail::exact_int_pow(16, m);
        ExactRational denom = (s16 - 1) * c.Em;
        c1 = (s16 * s16 * g2m - 2 * s16 * c.Em) / denom;
        c2 = -2 * g2m * c.Km * s16 * (2 * s16 - detail::exact_int_pow(-4, m) + 1) / denom;
        c3 = 2 * s16 * c.Km * (g2m - 2 * c.Hm) / denom;
    }
    c1.canonicalize();
    c2.canonicalize();
    c3.canonicalize();

    EvalResult s1 = ramanujan_S(n, 1.0, params);
    EvalResult s2 = ramanujan_S(n, 2.0, params);
    EvalResult s4 = ramanujan_S(n, 4.0, params);
    ZetaValue z;
    z.route = Route::ClosedForm;
    z.value = to_double(c1) * s1.value + to_double(c2) * s2.value + to_double(c3) * s4.value;
    z.abs_error_estimate = std::abs(to_double(c1)) * s1.abs_error_estimate +
                           std::abs(to_double(c2)) * s2.abs_error_estimate +
                           std::abs(to_double(c3)) * s4.abs_error_estimate +
                           4e-16 * std::abs(z.value);
    z.flags = s1.flags | s2.flags | s4.flags;
    z.terms_used = s1.terms_used + s2.terms_used + s4.terms_used;
    return z;
}

// zeta_K(n) = zeta(n) L(n, chi_D) for imaginary D and odd n >= 3,
// both factors in closed form.
inline ZetaValue dedekind_zeta_odd_imaginary(const Discriminant& D, unsigned n,
                                             const SeriesParams& params = {}) {
    if (D.real())
        throw std::domain_error("dedekind_zeta_odd_imaginary: requires D < 0");
    if (n < 3 || n % 2 == 0)
        throw std::domain_error("dedekind_zeta_odd_imaginary: requires odd n >= 3");
    ZetaValue zeta_part = zeta_odd_closed(n, params);
    ZetaValue L_part = dirichlet_L_odd_closed(D, (n - 1) / 2);
    ZetaValue z;
    z.route = Route::ClosedForm;
    z.value = zeta_part.value * L_part.value;
    z.abs_error_estimate = std::abs(zeta_part.value) * L_part.abs_error_estimate +
                           std::abs(L_part.value) * zeta_part.abs_error_estimate;
    z.flags = zeta_part.flags | L_part.flags;
    z.terms_used = zeta_part.terms_used;
    return z;
}

// zeta_K(2) for imaginary fields from the geometric A-sum:
//   zeta_K(2) = (pi^2 / (6 sqrt|D|)) sum_{0<a<|D|} chi(a) A(cot(pi a/|D|)),
// extending A to negative arguments by oddness.
inline ZetaValue zagier_zeta2_imaginary(const Discriminant& D, const SeriesParams& params = {}) {
    params.validate();
    if (D.real()) throw std::domain_error("zagier_zeta2_imaginary: requires D < 0");
    const long long f = D.abs();
    double sum = 0.0, err = 0.0;
    std::size_t evals = 0;
    for (long long a = 1; a < f; ++a) {
        int c = kronecker_symbol(D, a);
        if (!c) continue;
        double th = std::numbers::pi * static_cast<double>(a) / static_cast<double>(f);
        double x = std::cos(th) / std::sin(th);
        EvalResult A = zagier_A(std::abs(x), params);
        double signedA = (x >= 0 ? 1.0 : -1.0) * A.value.real();
        sum += c * signedA;
        err += A.abs_error_estimate;
        evals += A.terms_used;
    }
    const double scale =
        std::numbers::pi * std::numbers::pi / (6.0 * std::sqrt(static_cast<double>(f)));
    ZetaValue z;
    z.route = Route::Zagier;
    z.value = scale * sum;
    z.abs_error_estimate = scale * err + 4e-16 * std::abs(z.value);
    z.terms_used = evals;
    return z;
}

// Term-level account of the two oscillatory m-sums inside the
// series-derived zeta values; used to inspect decay behaviour.
struct WiltonSeriesParts {
    complex_t constant_term{0.0, 0.0};
    complex_t low_sum{0.0, 0.0};
    complex_t high_sum{0.0, 0.0};
    std::vector<double> low_term_mags;
    std::vector<double> high_term_mags;
};

namespace detail {

// {P + Q + 2R}(q; x) for integer q >= 2, where P, Q, R are the three
// phase evaluations of G. For small x the Gamma(1-u)^2 blocks and the
// C_J / C_Y constants cancel exactly across the sum, leaving
//   (-1)^q 2 pi T_Y(q, 1/x) + 2 G_0(x),
// and evaluating that form directly keeps the error proportional to
// the rapidly decaying value itself. Summing the three phases
// separately would leave an absolute noise floor (each phase carries
// O(1) constants) that the m^{2n} weights downstream would amplify
// into a spurious divergence.
inline EvalResult brace_combination(long q, double x, const SeriesParams& params) {
    if (x < 0.5) {
        const double X = 1.0 / x;
        const complex_t uq(static_cast<double>(q), 0.0);
        EvalResult ty = tail_ty(uq, X, params);
        EvalResult k0 = k0_mellin_tail(uq, X, params);
        const double sgn = (q % 2 == 0) ? 1.0 : -1.0;
        EvalResult b;
        b.value = sgn * 2.0 * std::numbers::pi * ty.value + 2.0 * k0.value;
        b.abs_error_estimate =
            2.0 * std::numbers::pi * ty.abs_error_estimate + 2.0 * k0.abs_error_estimate;
        b.flags = ty.flags | k0.flags;
        b.terms_used = ty.terms_used + k0.terms_used;
        // the combination is real for real order
        b.abs_error_estimate += std::abs(b.value.imag());
        b.value = complex_t(b.value.real(), 0.0);
        return b;
    }
    const complex_t uq(static_cast<double>(q), 0.0);
    EvalResult P = meijer_g_0331(uq, x, -1, params);
    EvalResult Q = meijer_g_0331(uq, x, +1, params);
    EvalResult R = meijer_g_0331(uq, x, 0, params);
    EvalResult b;
    b.value = P.value + Q.value + 2.0 * R.value;
    b.abs_error_estimate =
        P.abs_error_estimate + Q.abs_error_estimate + 2.0 * R.abs_error_estimate;
    b.flags = P.flags | Q.flags | R.flags;
    b.terms_used = P.terms_used + Q.terms_used + R.terms_used;
    b.abs_error_estimate += std::abs(b.value.imag());
    b.value = complex_t(b.value.real(), 0.0);
    return b;
}

}  // namespace detail

// Real-field odd values from the product identity specialized at the
// even closed-form point:
//   zeta_K(2n+1) = (C / zeta_K(2)) (1 + 1/(2n)) tau (2 pi)^{4n+4}
//                    B_{2n+2} B_{2n+2,chi} / (((2n+2)!)^2 D^{2n+2})
//     + (2 (2pi)^2 / zeta_K(2)) D^{-3/2} sum_m m sigma'(m) {P+Q+2R}(2; x_m)
//     + (2 (2pi)^{4n} / zeta_K(2)) D^{(-1-4n)/2} sum_m m^{2n} sigma'(m) {P+Q+2R}(2n+1; x_m)
// with C = h R / (w sqrt D), sigma' = sigma'_{-2n-2}, x_m = D/(4 pi^2 m),
// and P, Q, R the three phase evaluations of G. The m-sums converge
// conditionally; treat the result as a convergence study, not a
// precision route.
inline ZetaValue dedekind_zeta_odd_real_wilton(const Discriminant& D, unsigned n,
                                               const SeriesParams& params = {},
                                               WiltonSeriesParts* parts = nullptr) {
    params.validate();
    if (!D.real())
        throw std::domain_error("dedekind_zeta_odd_real_wilton: requires D > 0");
    if (n < 1) throw std::domain_error("dedekind_zeta_odd_real_wilton: requires n >= 1");

    FieldInvariants inv = field_invariants(D);
    ZetaValue zk2 = dedekind_zeta_even_real_closed(D, 1);
    GaussSumValue tau = gauss_sum(D);
    const double pi = std::numbers::pi;
    const double sqrtD = std::sqrt(static_cast<double>(D.value));
    const double C = inv.h * inv.reg / (inv.w * sqrtD);

    ExactRational bcore = bernoulli_number(2 * n + 2) * generalized_bernoulli(D, 2 * n + 2) /
                          (detail::exact_factorial(2 * n + 2) * detail::exact_factorial(2 * n + 2) *
                           detail::exact_int_pow(D.value, 2 * n + 2));
    double constant = (C / zk2.value.real()) * (1.0 + 1.0 / (2.0 * n)) * tau.value.real() *
                      std::pow(2.0 * pi, 4.0 * n + 4.0) * to_double(bcore);

    const complex_t zshift(-2.0 * static_cast<double>(n) - 2.0, 0.0);
    const double scale_lo = 2.0 * std::pow(2.0 * pi, 2.0) / (zk2.value.real() * std::pow(sqrtD, 3.0));
    const double scale_hi = 2.0 * std::pow(2.0 * pi, 4.0 * n) / zk2.value.real() *
                            std::pow(static_cast<double>(D.value), (-1.0 - 4.0 * n) / 2.0);

    ZetaValue z;
    z.route = Route::WiltonDerived;
    complex_t sum_lo{0.0, 0.0}, sum_hi{0.0, 0.0};
    double err = 0.0;
    std::vector<double> mags_lo, mags_hi;
    const std::size_t M = params.max_terms;
    for (std::size_t m = 1; m <= M; ++m) {
        double x = static_cast<double>(D.value) / (4.0 * pi * pi * static_cast<double>(m));
        double sp = sigma_prime(inv.chi, zshift, static_cast<long long>(m)).real();
        if (sp != 0.0) {
            EvalResult b_lo = detail::brace_combination(2, x, params);
            EvalResult b_hi = detail::brace_combination(2 * static_cast<long>(n) + 1, x, params);
            complex_t t_lo = static_cast<double>(m) * sp * b_lo.value;
            complex_t t_hi = std::pow(static_cast<double>(m), 2.0 * n) * sp * b_hi.value;
            sum_lo += t_lo;
            sum_hi += t_hi;
            err += scale_lo * (static_cast<double>(m) * std::abs(sp) * b_lo.abs_error_estimate) +
                   scale_hi * (std::pow(static_cast<double>(m), 2.0 * n) * std::abs(sp) *
                               b_hi.abs_error_estimate);
            z.flags |= b_lo.flags | b_hi.flags;
            z.terms_used += b_lo.terms_used + b_hi.terms_used;
            mags_lo.push_back(scale_lo * std::abs(t_lo));
            mags_hi.push_back(scale_hi * std::abs(t_hi));
        } else {
            mags_lo.push_back(0.0);
            mags_hi.push_back(0.0);
        }
    }
    z.value = constant + scale_lo * sum_lo + scale_hi * sum_hi;

    // conditional tail: square-root envelope over the trailing terms
    double last = 0.0;
    for (std::size_t i = mags_lo.size() >= 5 ? mags_lo.size() - 5 : 0; i < mags_lo.size(); ++i)
        last = std::max(last, mags_lo[i] + mags_hi[i]);
    z.abs_error_estimate = err + 3.0 * last * std::min(std::sqrt(static_cast<double>(M)), 30.0);
    if (z.abs_error_estimate > params.tolerance * std::max(1.0, std::abs(z.value)))
        z.flags |= FlagTruncated;

    if (parts) {
        parts->constant_term = constant;
        parts->low_sum = scale_lo * sum_lo;
        parts->high_sum = scale_hi * sum_hi;
        parts->low_term_mags = std::move(mags_lo);
        parts->high_term_mags = std::move(mags_hi);
    }
    return z;
}

// Imaginary-field even values by inverting the product identity at
// (u, v) = (2n, 2):
//   zeta_K(2n) = [ (2 pi h / (w sqrt|D|)) (1 + 1/(2n-1)) zeta_K(2n+1)
//                  - (2 pi)^3 |D|^{-3/2} sum_m sigma'(m) m B_J(2, X_m)
//                  - (2 pi)^{4n-1} |D|^{(1-4n)/2} sum_m sigma'(m) m^{2n-1} B_J(2n, X_m) ]
//                / zeta_K(2)
// with sigma' = sigma'_{-1-2n}, X_m = 4 pi^2 m / |D|; zeta_K(2) comes from
// the geometric route and zeta_K(2n+1) from the closed forms. The moment
// factors approach a nonzero constant, so the series does not decay;
// per-term magnitudes are surfaced for exactly that diagnosis.
inline ZetaValue dedekind_zeta_even_imaginary_wilton(const Discriminant& D, unsigned n,
                                                     const SeriesParams& params = {},
                                                     WiltonSeriesParts* parts = nullptr) {
    params.validate();
    if (D.real())
        throw std::domain_error("dedekind_zeta_even_imaginary_wilton: requires D < 0");
    if (n < 2) throw std::domain_error("dedekind_zeta_even_imaginary_wilton: requires n >= 2");

    FieldInvariants inv = field_invariants(D);
    ZetaValue zk2 = zagier_zeta2_imaginary(D, params);
    ZetaValue zk_odd = dedekind_zeta_odd_imaginary(D, 2 * n + 1, params);
    const double pi = std::numbers::pi;
    const double f = static_cast<double>(D.abs());

    double A = (2.0 * pi * inv.h / (inv.w * std::sqrt(f))) * (1.0 + 1.0 / (2.0 * n - 1.0)) *
               zk_odd.value.real();
    const complex_t zshift(-1.0 - 2.0 * static_cast<double>(n), 0.0);
    const double scale1 = std::pow(2.0 * pi, 3.0) * std::pow(f, -1.5);
    const double scale2 = std::pow(2.0 * pi, 4.0 * n - 1.0) * std::pow(f, (1.0 - 4.0 * n) / 2.0);

    ZetaValue z;
    z.route = Route::WiltonDerived;
    complex_t s1{0.0, 0.0}, s2{0.0, 0.0};
    double err = zk_odd.abs_error_estimate * (2.0 * pi * inv.h / (inv.w * std::sqrt(f))) * 2.0;
    std::vector<double> mags1, mags2;
    const std::size_t M = params.max_terms;
    for (std::size_t m = 1; m <= M; ++m) {
        double X = 4.0 * pi * pi * static_cast<double>(m) / f;
        double sp = sigma_prime(inv.chi, zshift, static_cast<long long>(m)).real();
        if (sp == 0.0) {
            mags1.push_back(0.0);
            mags2.push_back(0.0);
            continue;
        }
        EvalResult b1 = bessel_moment(complex_t(2.0, 0.0), X, params);
        EvalResult b2 = bessel_moment(complex_t(2.0 * n, 0.0), X, params);
        complex_t t1 = sp * static_cast<double>(m) * b1.value;
        complex_t t2 = sp * std::pow(static_cast<double>(m), 2.0 * n - 1.0) * b2.value;
        s1 += t1;
        s2 += t2;
        err += scale1 * std::abs(sp) * static_cast<double>(m) * b1.abs_error_estimate +
               scale2 * std::abs(sp) * std::pow(static_cast<double>(m), 2.0 * n - 1.0) *
                   b2.abs_error_estimate;
        z.flags |= b1.flags | b2.flags;
        z.terms_used += b1.terms_used + b2.terms_used;
        mags1.push_back(scale1 * std::abs(t1));
        mags2.push_back(scale2 * std::abs(t2));
    }
    double numer = A - scale1 * s1.real() - scale2 * s2.real();
    z.value = numer / zk2.value.real();

    double last = 0.0;
    for (std::size_t i = mags1.size() >= 5 ? mags1.size() - 5 : 0; i < mags1.size(); ++i)
        last = std::max(last, mags1[i] + mags2[i]);
    const double zk2v = std::max(1e-30, std::abs(zk2.value));
    const double tail = 3.0 * last * std::min(std::sqrt(static_cast<double>(M)), 30.0);
    z.abs_error_estimate =
        (err + tail) / zk2v + std::abs(z.value) * zk2.abs_error_estimate / zk2v;
    if (z.abs_error_estimate > params.tolerance * std::max(1.0, std::abs(z.value)))
        z.flags |= FlagTruncated;

    if (parts) {
        parts->constant_term = A / zk2.value.real();
        parts->low_sum = -scale1 * s1 / zk2.value.real();
        parts->high_sum = -scale2 * s2 / zk2.value.real();
        parts->low_term_mags = std::move(mags1);
        parts->high_term_mags = std::move(mags2);
    }
    return z;
}

}  // namespace zetaforge

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "zetaforge/arithmetic.hpp"
#include "zetaforge/core.hpp"

namespace zetaforge {

using ExactRational = mpq_class;

inline double to_double(const ExactRational& q) { return q.get_d(); }

inline ExactRational exact_pow(const ExactRational& x, unsigned long e) {
    ExactRational r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den().get_mpz_t(), e);
    // num/den were coprime, so their powers are as well
    return r;
}

// B_n with B_1 = -1/2, via the defining recurrence
//   sum_{k=0}^{n} C(n+1, k) B_k = 0.
// Exact rationals, cached; cost is O(n^2) rational ops on first demand.
inline ExactRational bernoulli_number(unsigned n) {
    static std::vector<ExactRational> cache{ExactRational(1)};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (cache.size() <= n) {
        unsigned m = static_cast<unsigned>(cache.size());
        if (m > 2 && (m & 1)) {
            cache.push_back(ExactRational(0));
            continue;
        }
        ExactRational acc(0);
        mpz_class bin;
        for (unsigned k = 0; k < m; ++k) {
            mpz_bin_uiui(bin.get_mpz_t(), m + 1, k);
            acc += ExactRational(bin) * cache[k];
        }
        ExactRational b = -acc / ExactRational(m + 1);
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[n];
}

// B_n(x) = sum_k C(n, k) B_k x^{n-k}, exact.
inline ExactRational bernoulli_polynomial(unsigned n, const ExactRational& x) {
    ExactRational acc(0);
    mpz_class bin;
    for (unsigned k = 0; k <= n; ++k) {
        mpz_bin_uiui(bin.get_mpz_t(), n, k);
        ExactRational term = ExactRational(bin) * bernoulli_number(k);
        if (n > k) term *= exact_pow(x, n - k);
        acc += term;
    }
    acc.canonicalize();
    return acc;
}

// Character Bernoulli number B_{n, chi_D} = f^{n-1} sum_a chi(a) B_n(a/f),
// f = |D|. Exact: the character values are integers and a/f is rational.
inline ExactRational generalized_bernoulli(const Discriminant& D, unsigned n) {
    const long f = static_cast<long>(D.abs());
    ExactRational acc(0);
    for (long a = 1; a < f; ++a) {
        int c = kronecker_symbol(D, a);
        if (!c) continue;
        ExactRational arg(a, f);
        arg.canonicalize();
        acc += c * bernoulli_polynomial(n, arg);
    }
    ExactRational scale = exact_pow(ExactRational(f), n >= 1 ? n - 1 : 0);
    if (n == 0) scale = ExactRational(1) / ExactRational(f);
    ExactRational out = scale * acc;
    out.canonicalize();
    return out;
}

// Gauss sum of chi_D. For fundamental D this is sqrt(D) (D > 0) or
// i sqrt(|D|) (D < 0); we still compute the exponential sum and verify,
// downgrading to the numeric value if the match fails.
struct GaussSumValue {
    enum class ExactForm { SqrtD, ISqrtAbsD, Numeric };
    complex_t value;
    ExactForm form;
};

inline GaussSumValue gauss_sum(const Discriminant& D) {
    const long long f = D.abs();
    complex_t acc{0.0, 0.0};
    for (long long a = 1; a < f; ++a) {
        int c = kronecker_symbol(D, a);
        if (!c) continue;
        double th = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(f);
        acc += complex_t(c * std::cos(th), c * std::sin(th));
    }
    const double root = std::sqrt(static_cast<double>(f));
    const double tol = 1e-9 * (root + 1.0) + 1e-9 * static_cast<double>(f);
    if (D.real() && std::abs(acc - complex_t(root, 0.0)) < tol)
        return {complex_t(root, 0.0), GaussSumValue::ExactForm::SqrtD};
    if (!D.real() && std::abs(acc - complex_t(0.0, root)) < tol)
        return {complex_t(0.0, root), GaussSumValue::ExactForm::ISqrtAbsD};
    return {acc, GaussSumValue::ExactForm::Numeric};
}

}  // namespace zetaforge

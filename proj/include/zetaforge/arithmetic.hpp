#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "zetaforge/core.hpp"
#include "zetaforge/gamma.hpp"

namespace zetaforge {

namespace detail {

inline bool squarefree(long long m) {
    m = std::llabs(m);
    if (m == 0) return false;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return false;
        }
    }
    return true;
}

// Kronecker symbol (a/n), full extension: n may be negative, even, or zero.
inline int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int k = 1;
    int v = 0;
    while ((n & 1) == 0) {
        n /= 2;
        ++v;
    }
    if (v & 1) {
        long long am = ((a % 8) + 8) % 8;
        if (am == 3 || am == 5) k = -k;
    }
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    a = ((a % n) + n) % n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a /= 2;
            long long nm = n % 8;
            if (nm == 3 || nm == 5) k = -k;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) k = -k;
        a %= n;
    }
    return n == 1 ? k : 0;
}

}  // namespace detail

// Fundamental discriminant test: d = 1 mod 4 squarefree, or d = 4q with
// q = 2, 3 mod 4 squarefree. 0 and 1 are excluded.
inline bool is_fundamental(long long d) {
    if (d == 0 || d == 1) return false;
    long long r4 = ((d % 4) + 4) % 4;
    if (r4 == 1) return detail::squarefree(d);
    if (r4 != 0) return false;
    long long q = d / 4;
    long long q4 = ((q % 4) + 4) % 4;
    if (q4 != 2 && q4 != 3) return false;
    return detail::squarefree(q);
}

// Validated fundamental discriminant. Everything downstream takes this
// type so the check happens exactly once.
struct Discriminant {
    long long value;

    explicit Discriminant(long long d) : value(d) {
        if (!is_fundamental(d))
            throw std::domain_error("Discriminant: " + std::to_string(d) +
                                    " is not a fundamental discriminant");
    }

    bool real() const { return value > 0; }
    long long abs() const { return value > 0 ? value : -value; }
};

// chi_D(n) for the real character attached to D, all integer n.
inline int kronecker_symbol(const Discriminant& D, long long n) {
    return detail::kronecker(D.value, n);
}

// Dense period table of chi_D; cheaper than re-running the symbol inside
// sieves and character sums.
struct CharacterTable {
    long long modulus = 0;
    std::vector<int> values;  // values[r] = chi(r), r in [0, modulus)

    static CharacterTable build(const Discriminant& D) {
        CharacterTable t;
        t.modulus = D.abs();
        t.values.resize(static_cast<std::size_t>(t.modulus));
        for (long long r = 0; r < t.modulus; ++r)
            t.values[static_cast<std::size_t>(r)] = kronecker_symbol(D, r);
        return t;
    }

    int operator()(long long n) const {
        long long r = n % modulus;
        if (r < 0) r += modulus;
        return values[static_cast<std::size_t>(r)];
    }
};

// Number of integral ideals of norm n: sum over d | n of chi(d).
inline long long ideal_count(const CharacterTable& chi, long long n) {
    if (n < 1) throw std::domain_error("ideal_count: requires n >= 1");
    long long acc = 0;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        acc += chi(d);
        long long e = n / d;
        if (e != d) acc += chi(e);
    }
    return acc;
}

inline long long ideal_count(const Discriminant& D, long long n) {
    if (n < 1) throw std::domain_error("ideal_count: requires n >= 1");
    long long acc = 0;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        acc += kronecker_symbol(D, d);
        long long e = n / d;
        if (e != d) acc += kronecker_symbol(D, e);
    }
    return acc;
}

// Twisted divisor sum, weight v = ideal_count:
//   sigma'_z(n) = sum over d | n of d^z v(d) v(n/d)
// Satisfies sigma'_z(n) = n^z sigma'_{-z}(n).
inline complex_t sigma_prime(const CharacterTable& chi, const complex_t& z, long long n) {
    if (n < 1) throw std::domain_error("sigma_prime: requires n >= 1");
    complex_t acc{0.0, 0.0};
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        long long e = n / d;
        double prod = static_cast<double>(ideal_count(chi, d)) *
                      static_cast<double>(ideal_count(chi, e));
        if (prod == 0.0) continue;
        acc += prod * cpow(static_cast<double>(d), z);
        if (e != d) acc += prod * cpow(static_cast<double>(e), z);
    }
    return acc;
}

// Plain sigma_z(n) = sum over d | n of d^z.
inline complex_t divisor_sigma(const complex_t& z, long long n) {
    if (n < 1) throw std::domain_error("divisor_sigma: requires n >= 1");
    complex_t acc{0.0, 0.0};
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        acc += cpow(static_cast<double>(d), z);
        long long e = n / d;
        if (e != d) acc += cpow(static_cast<double>(e), z);
    }
    return acc;
}

// Smallest solution of x^2 - D y^2 = +-4 with y >= 1, encoding the
// fundamental unit (x + y sqrt(D)) / 2 of the field of discriminant D > 0.
struct FundamentalUnit {
    mpz_class x;
    mpz_class y;
    int norm;  // +1 or -1
};

inline FundamentalUnit fundamental_unit(const Discriminant& D) {
    if (!D.real()) throw std::domain_error("fundamental_unit: requires a real field (D > 0)");

    auto isqrt_ll = [](long long v) {
        long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
        while (r * r > v) --r;
        while ((r + 1) * (r + 1) <= v) ++r;
        return r;
    };

    // Continued fraction of w = (P0 + sqrt(N)) / Q0 with convergents p/q.
    // Every candidate from a convergent is tested exactly, so the first
    // hit is the fundamental solution.
    long long N, P0, Q0;
    bool half_basis = (((D.value % 4) + 4) % 4 == 1);
    if (half_basis) {
        N = D.value;  // w = (1 + sqrt(D)) / 2, candidate x = 2p - q, y = q
        P0 = 1;
        Q0 = 2;
    } else {
        N = D.value / 4;  // w = sqrt(D/4), candidate x = 2p, y = q
        P0 = 0;
        Q0 = 1;
    }
    const long long s = isqrt_ll(N);

    long long P = P0, Q = Q0;
    mpz_class pkm2 = 0, pkm1 = 1;  // p_{-2}, p_{-1}
    mpz_class qkm2 = 1, qkm1 = 0;  // q_{-2}, q_{-1}
    const mpz_class Dz = static_cast<long>(D.value);

    for (int k = 0; k < 100000; ++k) {
        long a = static_cast<long>((P + s) / Q);  // floor((P + sqrt(N)) / Q), Q > 0
        mpz_class pk = a * pkm1 + pkm2;
        mpz_class qk = a * qkm1 + qkm2;
        pkm2 = pkm1;
        pkm1 = pk;
        qkm2 = qkm1;
        qkm1 = qk;

        mpz_class x = half_basis ? mpz_class(2 * pk - qk) : mpz_class(2 * pk);
        mpz_class y = qk;
        mpz_class lhs = x * x - Dz * y * y;
        if (lhs == 4 || lhs == -4) return {x, y, lhs == 4 ? 1 : -1};

        P = a * Q - P;
        Q = (N - P * P) / Q;
        if (Q <= 0) throw std::logic_error("fundamental_unit: continued fraction degenerated");
    }
    throw std::runtime_error("fundamental_unit: period not found within iteration cap");
}

// log of the fundamental unit; scales through get_d_2exp so huge
// convergents for large D do not overflow.
inline double regulator(const Discriminant& D) {
    FundamentalUnit u = fundamental_unit(D);
    long xe = 0, ye = 0;
    double xd = mpz_get_d_2exp(&xe, u.x.get_mpz_t());
    double yd = mpz_get_d_2exp(&ye, u.y.get_mpz_t());
    double sqrtD = std::sqrt(static_cast<double>(D.value));
    long k = std::max(xe, ye);
    double v = xd * std::ldexp(1.0, static_cast<int>(xe - k)) +
               yd * sqrtD * std::ldexp(1.0, static_cast<int>(ye - k));
    return std::log(v) + static_cast<double>(k) * std::numbers::ln2 - std::numbers::ln2;
}

inline int unit_count(const Discriminant& D) {
    if (D.value == -3) return 6;
    if (D.value == -4) return 4;
    return 2;
}

// Dirichlet L(1, chi_D) through the digamma expansion over one period.
// Self-contained here so the class number formula has no dependency on
// the zeta evaluators (which in turn consume these invariants).
inline double l_one_exact(const Discriminant& D) {
    const long long f = D.abs();
    double acc = 0.0;
    for (long long a = 1; a < f; ++a) {
        int c = kronecker_symbol(D, a);
        if (c) acc += c * digamma(static_cast<double>(a) / static_cast<double>(f));
    }
    return -acc / static_cast<double>(f);
}

inline long long class_number(const Discriminant& D) {
    if (!D.real()) {
        // h = w |sum chi(a) a| / (2|D|), exact in integers
        const long long f = D.abs();
        long long S = 0;
        for (long long a = 1; a < f; ++a) S += kronecker_symbol(D, a) * a;
        if (S < 0) S = -S;
        long long num = unit_count(D) * S;
        if (num % (2 * f) != 0)
            throw std::logic_error("class_number: character sum not divisible as expected");
        return num / (2 * f);
    }
    // h = sqrt(D) L(1, chi) / (2 R); must land on an integer
    double R = regulator(D);
    double h = std::sqrt(static_cast<double>(D.value)) * l_one_exact(D) / (2.0 * R);
    double rounded = std::floor(h + 0.5);
    if (std::abs(h - rounded) >= 0.25 || rounded < 1.0)
        throw std::runtime_error("class_number: analytic estimate did not resolve to an integer");
    return static_cast<long long>(rounded);
}

// Everything the closed forms and series assemblies need about one field.
// residue is Res_{s=1} zeta_K(s) = L(1, chi), reconstructed from h and
// cross-checked against the direct digamma value.
struct FieldInvariants {
    Discriminant disc;
    long long h;
    double reg;        // 1.0 for imaginary fields (empty regulator product)
    int w;             // number of roots of unity
    double residue;
    CharacterTable chi;
};

inline FieldInvariants field_invariants(const Discriminant& D) {
    FieldInvariants inv{D, 0, 1.0, unit_count(D), 0.0, CharacterTable::build(D)};
    inv.h = class_number(D);
    double direct = l_one_exact(D);
    if (D.real()) {
        inv.reg = regulator(D);
        inv.residue = 2.0 * inv.h * inv.reg / std::sqrt(static_cast<double>(D.value));
    } else {
        inv.residue = 2.0 * std::numbers::pi * inv.h /
                      (inv.w * std::sqrt(static_cast<double>(D.abs())));
    }
    if (std::abs(inv.residue - direct) > 1e-8 * std::max(1.0, std::abs(direct)))
        throw std::logic_error("field_invariants: residue cross-check failed");
    return inv;
}

}  // namespace zetaforge

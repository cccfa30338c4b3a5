#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "zetaforge/core.hpp"

namespace zetaforge {

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by
// Newton iteration on P_n. Avoids baked-in tables; accurate to ~1 ulp.
inline const std::pair<std::vector<double>, std::vector<double>>& gl_rule(int n) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence for P_n(t) and P'_n(t)
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

template <class T>
struct Quad {
    T value{};
    double err = 0.0;
    std::size_t evals = 0;
};

template <class F>
auto integrate_fixed(F&& f, double a, double b, int order) {
    const auto& [x, w] = gl_rule(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    using T = decltype(f(mid));
    T acc{};
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * f(mid + half * x[i]);
    return static_cast<T>(half * acc);
}

// Adaptive bisection with a GL16/GL32 error estimate per segment.
// Splits until |GL32 - GL16| fits within the segment's share of abs_tol
// plus rel_tol * |segment value|.
template <class F>
auto adaptive_integrate(F&& f, double a, double b, double abs_tol, double rel_tol = 1e-13,
                        int max_depth = 32) {
    using T = decltype(f(a));
    struct Seg {
        double a, b;
        int depth;
    };
    Quad<T> out;
    if (!(b > a)) return out;
    std::vector<Seg> stack{{a, b, 0}};
    const double total = b - a;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        T coarse = integrate_fixed(f, s.a, s.b, 16);
        T fine = integrate_fixed(f, s.a, s.b, 32);
        out.evals += 48;
        double err = std::abs(fine - coarse);
        double tol = abs_tol * ((s.b - s.a) / total) + rel_tol * std::abs(fine);
        if (err <= tol || s.depth >= max_depth) {
            out.value += fine;
            out.err += err;
        } else {
            double m = 0.5 * (s.a + s.b);
            stack.push_back({s.a, m, s.depth + 1});
            stack.push_back({m, s.b, s.depth + 1});
        }
    }
    return out;
}

}  // namespace zetaforge

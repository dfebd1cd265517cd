// quadrature.hpp — Adaptive Gauss-Legendre integration for smooth 1D integrands

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace lzbath::quad {

namespace detail {

// 15-point Gauss-Legendre nodes/weights on [-1, 1], computed once via
// Newton iteration on the Legendre polynomial.
struct Gauss15 {
    std::array<double, 15> node{};
    std::array<double, 15> weight{};

    Gauss15() {
        constexpr int n = 15;
        for (int k = 0; k < n; ++k) {
            double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            node[static_cast<std::size_t>(k)] = x;
            weight[static_cast<std::size_t>(k)] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

inline const Gauss15& gauss15() {
    static const Gauss15 g;
    return g;
}

template <class F>
double panel(const F& f, double a, double b) {
    const auto& g = gauss15();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t k = 0; k < g.node.size(); ++k)
        sum += g.weight[k] * f(mid + half * g.node[k]);
    return half * sum;
}

template <class F>
double adaptive(const F& f, double a, double b, double coarse, double abs_tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = panel(f, a, mid);
    const double right = panel(f, mid, b);
    const double fine = left + right;
    if (std::abs(fine - coarse) <= abs_tol || depth >= 48) return fine;
    return adaptive(f, a, mid, left, 0.5 * abs_tol, depth + 1) +
           adaptive(f, mid, b, right, 0.5 * abs_tol, depth + 1);
}

} // namespace detail

// Integrates f over [a, b] to the requested relative tolerance (with a
// tiny absolute floor so integrals that are exactly zero terminate).
template <class F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-10) {
    if (!(b >= a)) throw std::invalid_argument("quad::integrate: b < a");
    if (a == b) return 0.0;
    const double coarse = detail::panel(f, a, b);
    const double scale = std::max(std::abs(coarse), 1e-300);
    const double abs_tol = std::max(rel_tol * scale, 1e-300);
    return detail::adaptive(f, a, b, coarse, abs_tol, 0);
}

} // namespace lzbath::quad

// SPDX-License-Identifier: MIT
#pragma once

/// \file bounds.hpp
///
/// L_p error bounds for Wiener-Hopf factors of an approximated kernel, and
/// L_p norms on the real line by mapped Clenshaw-Curtis quadrature.
///
/// No such bound exists in L_infinity (the Hilbert transform is unbounded
/// there), so sup-norm residuals elsewhere are reported but never certified.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "whfact/chebyshev.hpp"
#include "whfact/detail/fft.hpp"
#include "whfact/error.hpp"

namespace whfact {

/// Norm of the Hilbert transform on L_p(R).
[[nodiscard]] inline double hilbert_constant(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw Error(ErrorCode::DomainError, "Hilbert transform bound needs 1 < p < infinity");
    }
    if (p == 2.0) return 1.0;
    const double t = std::numbers::pi / (2.0 * p);
    return p < 2.0 ? std::tan(t) : 1.0 / std::tan(t);
}

/// Bound on ||f_+ - g_+||_p given ||f - g||_p = eps.
[[nodiscard]] inline double additive_bound(double eps, double p) {
    if (!(eps >= 0.0)) throw Error(ErrorCode::DomainError, "eps must be nonnegative");
    return (1.0 + hilbert_constant(p)) * eps / 2.0;
}

struct BoundReport {
    double p = 2.0;
    double epsilon_p = 0.0;
    double m_lower = 1.0;
    double M_upper = 1.0;
    double factor_bound = 0.0;
    bool real_kernel = true;
};

/// Bound on ||K_+ - K~_+||_p when ||K - K~||_p = eps and m <= |K| <= M.
/// For real kernels the exp(c(p) pi / 2) factor is dropped.
[[nodiscard]] inline BoundReport multiplicative_bound(double eps, double p, double m, double M,
                                                      bool real_kernel) {
    const double c = hilbert_constant(p);
    if (!(eps >= 0.0) || !(m > 0.0) || !(M >= m)) {
        throw Error(ErrorCode::DomainError, "multiplicative bound needs 0 <= eps and 0 < m <= M");
    }
    if (eps >= m) throw Error(ErrorCode::InvalidBound, "eps >= m makes the bound vacuous");
    BoundReport r;
    r.p = p;
    r.epsilon_p = eps;
    r.m_lower = m;
    r.M_upper = M;
    r.real_kernel = real_kernel;
    r.factor_bound = std::sqrt(M + eps) * (1.0 + c) * eps / (2.0 * (m - eps));
    if (!real_kernel) r.factor_bound *= std::exp(c * std::numbers::pi / 2.0);
    return r;
}

struct LpOptions {
    double tol = 1e-10;      // relative change of the integral between doublings
    double abs_tol = 0.0;    // absolute change of the norm, for integrands at rounding level
    std::size_t min_points = 64;
    std::size_t max_points = std::size_t{1} << 20;
};

/// (int_R |F(y)|^p dy)^{1/p} by Clenshaw-Curtis after y = x / (1 - x^2).
/// With this map a factor error decaying like 1/y still gives an integrand
/// that is smooth up to x = +-1; the endpoint values are extrapolated.
template <typename F>
[[nodiscard]] double lp_norm(F&& f, double p, const LpOptions& opts = {}) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::DomainError, "lp_norm needs finite p >= 1");
    auto integrate = [&](std::size_t n) {
        const auto x = cheb_points(n);
        std::vector<double> g(n + 1, 0.0);
        for (std::size_t j = 1; j < n; ++j) {
            const double s = (1.0 - x[j]) * (1.0 + x[j]);
            const double y = x[j] / s;
            g[j] = std::pow(std::abs(f(y)), p) * (1.0 + x[j] * x[j]) / (s * s);
        }
        auto extrapolate = [&](std::size_t e, std::size_t a, std::size_t b) {
            g[e] = std::max(0.0, g[a] + (g[a] - g[b]) * (x[e] - x[a]) / (x[a] - x[b]));
        };
        extrapolate(0, 1, 2);
        extrapolate(n, n - 1, n - 2);
        const auto a = detail::dct1_cheb_coeffs(g);
        double sum = 0.0;
        for (std::size_t k = 0; k <= n; k += 2) {
            sum += a[k] * 2.0 / (1.0 - static_cast<double>(k * k));
        }
        return sum;
    };
    auto root = [p](double v) { return std::pow(std::max(v, 0.0), 1.0 / p); };
    double prev = integrate(opts.min_points);
    for (std::size_t n = 2 * opts.min_points; n <= opts.max_points; n *= 2) {
        const double cur = integrate(n);
        if (std::abs(cur - prev) <= opts.tol * std::abs(cur) || std::abs(root(cur) - root(prev)) <= opts.abs_tol) {
            return root(cur);
        }
        prev = cur;
    }
    throw Error(ErrorCode::NotConverged, "L_p quadrature did not converge; the function decays too slowly");
}

}  // namespace whfact

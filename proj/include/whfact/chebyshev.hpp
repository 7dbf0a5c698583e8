// SPDX-License-Identifier: MIT
#pragma once

/// \file chebyshev.hpp
///
/// Chebyshev expansions of continuous functions on [-1, 1]: adaptive
/// construction from samples at second-kind Chebyshev points, Clenshaw
/// evaluation, tail bounds and root finding through the colleague matrix.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "whfact/detail/fft.hpp"
#include "whfact/detail/linalg.hpp"
#include "whfact/error.hpp"

namespace whfact {

/// Coefficients of sum_k a_k T_k(x). `resolved` is false when adaptive
/// construction stopped at the degree cap without the tail dropping below
/// tolerance (algebraically decaying input).
struct ChebSeries {
    std::vector<double> coeffs{0.0};
    bool resolved = true;

    [[nodiscard]] std::size_t degree() const noexcept { return coeffs.size() - 1; }
};

struct ChebOptions {
    double tol = 1e-14;
    std::size_t min_degree = 16;
    std::size_t max_degree = std::size_t{1} << 16;
};

/// Second-kind points cos(pi j / n), j = 0..n (descending from 1 to -1).
[[nodiscard]] inline std::vector<double> cheb_points(std::size_t n) {
    std::vector<double> x(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        // sin form keeps the points exactly antisymmetric
        x[j] = std::sin(std::numbers::pi * (static_cast<double>(n) - 2.0 * static_cast<double>(j)) /
                        (2.0 * static_cast<double>(n)));
    }
    if (n == 0) x[0] = 1.0;
    return x;
}

/// Clenshaw recurrence for sum_k c_k T_k(x), valid for any real or complex x.
template <typename T>
[[nodiscard]] T clenshaw(std::span<const double> c, T x) {
    T b1 = T(0), b2 = T(0);
    for (std::size_t k = c.size(); k-- > 1;) {
        const T b0 = T(2) * x * b1 - b2 + T(c[k]);
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + T(c.empty() ? 0.0 : c[0]);
}

[[nodiscard]] inline double eval_cheb(const ChebSeries& s, double x) {
    if (std::abs(x) > 1.0 + 1e-12) {
        throw Error(ErrorCode::DomainError, "Chebyshev series evaluated outside [-1, 1]");
    }
    return clenshaw<double>(s.coeffs, std::clamp(x, -1.0, 1.0));
}

/// Sum of |a_k| over k > m; bounds the sup norm of the discarded tail.
[[nodiscard]] inline double tail_bound(const ChebSeries& s, std::size_t m) {
    double sum = 0.0;
    for (std::size_t k = m + 1; k < s.coeffs.size(); ++k) sum += std::abs(s.coeffs[k]);
    return sum;
}

/// Chebyshev coefficients of the degree-n interpolant of f.
template <typename F>
[[nodiscard]] std::vector<double> cheb_interpolate(F&& f, std::size_t n) {
    const auto x = cheb_points(n);
    std::vector<double> v(n + 1);
    for (std::size_t j = 0; j <= n; ++j) v[j] = static_cast<double>(f(x[j]));
    return detail::dct1_cheb_coeffs(v);
}

/// Adaptive construction: the degree doubles from `min_degree` until the
/// largest of the last three coefficients is below tol * max|a_k|.
template <typename F>
[[nodiscard]] ChebSeries compute_cheb_series(F&& f, const ChebOptions& opts = {}) {
    if (!(opts.tol > 0.0)) throw Error(ErrorCode::DomainError, "tolerance must be positive");
    std::size_t n = std::max<std::size_t>(opts.min_degree, 4);
    for (;;) {
        ChebSeries s{cheb_interpolate(f, n), false};
        double scale = 0.0;
        for (double a : s.coeffs) scale = std::max(scale, std::abs(a));
        const double last = std::max({std::abs(s.coeffs[n]), std::abs(s.coeffs[n - 1]),
                                      std::abs(s.coeffs[n - 2])});
        if (!std::isfinite(scale)) {
            throw Error(ErrorCode::DomainError, "function is not finite on [-1, 1]");
        }
        if (last <= opts.tol * scale) {
            s.resolved = true;
            return s;
        }
        if (n >= opts.max_degree) return s;
        n = std::min(2 * n, opts.max_degree);
    }
}

/// Coefficients of d/dx sum_k c_k T_k(x).
[[nodiscard]] inline std::vector<double> cheb_derivative(std::span<const double> c) {
    const std::size_t n = c.size();
    if (n <= 1) return {0.0};
    std::vector<double> d(n - 1, 0.0);
    // d_{k-1} = d_{k+1} + 2 k c_k, run downward
    for (std::size_t k = n - 1; k >= 1; --k) {
        const double next = (k + 1 < n - 1) ? d[k + 1] : 0.0;
        d[k - 1] = next + 2.0 * static_cast<double>(k) * c[k];
    }
    d[0] *= 0.5;
    return d;
}

/// Roots of sum_k c_k T_k(x) as eigenvalues of the balanced colleague matrix,
/// each polished by a few guarded Newton steps. Leading coefficients below
/// `trim` * max|c_k| are dropped first.
[[nodiscard]] inline std::vector<std::complex<double>>
cheb_roots(std::span<const double> c_in, double trim = 1e-13) {
    using cplx = std::complex<double>;
    double scale = 0.0;
    for (double v : c_in) scale = std::max(scale, std::abs(v));
    std::size_t n = c_in.size();
    while (n > 0 && std::abs(c_in[n - 1]) <= trim * scale) --n;
    if (n <= 1) return {};
    const std::size_t deg = n - 1;
    std::span<const double> c = c_in.first(n);

    std::vector<cplx> roots;
    if (deg == 1) {
        roots.push_back(-c[0] / c[1]);
    } else {
        const auto d = static_cast<Eigen::Index>(deg);
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
        a(0, 1) = 1.0;
        for (Eigen::Index i = 1; i < d - 1; ++i) {
            a(i, i - 1) = 0.5;
            a(i, i + 1) = 0.5;
        }
        a(d - 1, d - 2) += 0.5;
        for (Eigen::Index j = 0; j < d; ++j) {
            a(d - 1, j) -= c[static_cast<std::size_t>(j)] / (2.0 * c[deg]);
        }
        detail::balance_matrix(a);
        Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
        if (solver.info() != Eigen::Success) {
            throw Error(ErrorCode::DomainError, "colleague eigenvalue iteration failed");
        }
        for (Eigen::Index i = 0; i < d; ++i) roots.push_back(solver.eigenvalues()(i));
    }

    const auto dc = cheb_derivative(c);
    for (auto& r : roots) {
        cplx value = clenshaw<cplx>(c, r);
        for (int it = 0; it < 3; ++it) {
            const cplx slope = clenshaw<cplx>(dc, r);
            if (slope == cplx(0.0)) break;
            const cplx trial = r - value / slope;
            const cplx trial_value = clenshaw<cplx>(c, trial);
            if (!(std::abs(trial_value) < std::abs(value))) break;
            r = trial;
            value = trial_value;
        }
    }
    return roots;
}

}  // namespace whfact

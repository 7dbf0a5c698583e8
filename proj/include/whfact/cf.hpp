// SPDX-License-Identifier: MIT
#pragma once

/// \file cf.hpp
///
/// Real rational Caratheodory-Fejer approximation on [-1, 1].
///
/// The Hankel matrix of the Chebyshev coefficients a_{m-n+1}..a_M is
/// diagonalised; the (n+1)-th eigenpair (lambda, u) gives the finite Blaschke
/// product
///
///     b(z) = z^M u(z) / u~(z),   u(z) = sum_j u_j z^{j-1},  u~(z) = z^{K-1} u(1/z),
///
/// and f+ - lambda b is the best approximation of f+ from the extended class
/// on the unit circle. Its n poles outside the disk become the denominator
/// q(x) through the Joukowski map; the numerator is the degree-m Chebyshev
/// truncation of q(x) * (F_M(x) - lambda Re b(z)).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "whfact/chebyshev.hpp"
#include "whfact/detail/fft.hpp"
#include "whfact/error.hpp"
#include "whfact/rational.hpp"

namespace whfact {

struct HankelSpectrum {
    Eigen::MatrixXd matrix;
    std::vector<double> eigenvalues;  // sorted by decreasing |lambda|, ties by signed value
    std::size_t chosen_index = 0;     // 0-based, i.e. n
    std::vector<double> u;            // eigenvector of eigenvalues[chosen_index]
    bool degenerate = false;

    [[nodiscard]] std::size_t matrix_order() const noexcept {
        return static_cast<std::size_t>(matrix.rows());
    }
    [[nodiscard]] double chosen() const { return eigenvalues.at(chosen_index); }
};

/// Hankel matrix with first row a_{m-n+1}..a_M and zeros below the
/// anti-diagonal, of order M + n - m.
[[nodiscard]] inline HankelSpectrum build_hankel(const ChebSeries& s, std::size_t m, std::size_t n) {
    const std::size_t big_m = s.degree();
    if (n > m) throw Error(ErrorCode::DomainError, "CF needs m >= n");
    if (big_m <= m) throw Error(ErrorCode::DomainError, "series degree must exceed m");
    const std::size_t order = big_m + n - m;
    const std::size_t first = m - n + 1;

    HankelSpectrum h;
    const auto k = static_cast<Eigen::Index>(order);
    h.matrix = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            const std::size_t idx = first + static_cast<std::size_t>(i + j);
            if (idx <= big_m) h.matrix(i, j) = s.coeffs[idx];
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::DomainError, "Hankel eigenvalue iteration failed");
    }
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
    const auto& ev = solver.eigenvalues();
    std::stable_sort(perm.begin(), perm.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (std::abs(ev(a)) != std::abs(ev(b))) return std::abs(ev(a)) > std::abs(ev(b));
        return ev(a) > ev(b);
    });
    for (auto p : perm) h.eigenvalues.push_back(ev(p));

    h.chosen_index = std::min(n, order - 1);
    const Eigen::VectorXd v = solver.eigenvectors().col(perm[h.chosen_index]);
    h.u.assign(v.data(), v.data() + v.size());
    const auto lead = std::find_if(h.u.begin(), h.u.end(), [](double x) { return std::abs(x) > 1e-14; });
    if (lead != h.u.end() && *lead < 0) {
        for (double& x : h.u) x = -x;
    }

    const double chosen = h.eigenvalues[h.chosen_index];
    auto ambiguous = [&](std::size_t other) {
        const double lam = h.eigenvalues[other];
        return lam != chosen &&
               std::abs(std::abs(lam) - std::abs(chosen)) <= 1e-12 * std::max(std::abs(chosen), 1e-300);
    };
    if (h.chosen_index + 1 < order && ambiguous(h.chosen_index + 1)) h.degenerate = true;
    if (h.chosen_index > 0 && ambiguous(h.chosen_index - 1)) h.degenerate = true;
    return h;
}

/// p(x)/q(x) with both given by Chebyshev coefficients.
struct ChebRational {
    std::vector<double> num{0.0};
    std::vector<double> den{1.0};

    template <typename T>
    [[nodiscard]] T operator()(T x) const {
        return clenshaw<T>(num, x) / clenshaw<T>(den, x);
    }
};

struct CFResult {
    ChebRational approximant;
    double predicted_error = 0.0;  // |lambda_{n+1}|
    double lambda = 0.0;
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<cplx> den_roots;    // poles of the approximant in x
    std::size_t outer_roots = 0;    // roots of u~ outside the unit disk
    std::size_t hankel_order = 0;
    bool degenerate = false;
    bool symmetry_reduced = false;  // solved in t = 2x^2 - 1 for an even input

    [[nodiscard]] double operator()(double x) const { return approximant(x); }
};

struct CFOptions {
    bool exploit_symmetry = true;
    double parity_tol = 1e-13;
    std::size_t min_fft = 256;
};

[[nodiscard]] inline bool is_even_series(const ChebSeries& s, double tol) {
    double scale = 0.0, odd = 0.0;
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) {
        scale = std::max(scale, std::abs(s.coeffs[k]));
        if (k % 2 == 1) odd = std::max(odd, std::abs(s.coeffs[k]));
    }
    return odd <= tol * scale;
}

namespace detail {

inline cplx horner(const std::vector<double>& c, cplx z) {
    cplx v(0.0);
    for (std::size_t k = c.size(); k-- > 0;) v = v * z + c[k];
    return v;
}

inline CFResult cf_general(const ChebSeries& s, std::size_t m, std::size_t n, const CFOptions& opts) {
    const std::size_t big_m = s.degree();
    CFResult out;
    out.m = m;
    out.n = n;

    if (n == 0) {
        // plain truncation; |lambda_1| of the polynomial Hankel matrix estimates the error
        const auto h = build_hankel(s, m, 0);
        out.approximant.num.assign(s.coeffs.begin(), s.coeffs.begin() + static_cast<long>(m) + 1);
        out.approximant.den = {1.0};
        out.lambda = h.eigenvalues.front();
        out.predicted_error = std::abs(out.lambda);
        out.hankel_order = h.matrix_order();
        out.degenerate = h.degenerate;
        return out;
    }

    const auto h = build_hankel(s, m, n);
    const std::size_t order = h.matrix_order();
    const double lambda = h.chosen();
    out.lambda = lambda;
    out.predicted_error = std::abs(lambda);
    out.hankel_order = order;
    out.degenerate = h.degenerate;

    // u~(z) = sum_j u_j z^{K-j}, ascending coefficients are u reversed
    const std::vector<double>& u = h.u;
    std::vector<double> u_rev(u.rbegin(), u.rend());
    std::vector<cplx> u_rev_c(u_rev.begin(), u_rev.end());
    const auto zeta = poly_roots(u_rev_c);
    std::vector<cplx> xi;
    for (const auto& z : zeta) {
        if (std::abs(z) > 1.0) xi.push_back(0.5 * (z + 1.0 / z));
    }
    out.outer_roots = xi.size();
    if (xi.size() != n) out.degenerate = true;
    for (const auto& x : xi) {
        if (std::abs(x.imag()) < 1e-12 && std::abs(x.real()) <= 1.0 + 1e-12) {
            throw Error(ErrorCode::DenominatorZeroOnInterval,
                        "CF denominator vanishes on [-1, 1]; choose different (m, n)");
        }
    }
    out.den_roots = xi;

    auto q_monic = [&xi](double x) {
        cplx v(1.0);
        for (const auto& r : xi) v *= (x - r);
        return v.real();
    };
    std::vector<double> den = cheb_interpolate(q_monic, xi.size());
    double den_scale = 0.0;
    for (double c : den) den_scale = std::max(den_scale, std::abs(c));
    for (double& c : den) c /= den_scale;

    const std::size_t nfft = std::max(opts.min_fft, next_pow2(4 * (big_m + n)));
    std::vector<double> g(nfft + 1);
    const auto x = cheb_points(nfft);
    for (std::size_t j = 0; j <= nfft; ++j) {
        const double theta = std::numbers::pi * static_cast<double>(j) / static_cast<double>(nfft);
        const cplx z = std::polar(1.0, theta);
        const cplx b = std::polar(1.0, static_cast<double>(big_m) * theta) * horner(u, z) / horner(u_rev, z);
        const double fm = clenshaw<double>(s.coeffs, x[j]);
        const double rt = fm - lambda * b.real();
        g[j] = clenshaw<double>(den, x[j]) * rt;
    }
    const auto gc = dct1_cheb_coeffs(g);
    out.approximant.num.assign(gc.begin(), gc.begin() + static_cast<long>(m) + 1);
    out.approximant.den = std::move(den);
    return out;
}

}  // namespace detail

/// Near-best type (m, n) rational approximation of a resolved series.
/// Requires m >= n. A series of degree <= m is returned exactly with zero
/// predicted error. Even input is solved in t = 2x^2 - 1 with
/// (floor(m/2), floor(n/2)), which keeps the approximant even and avoids the
/// paired eigenvalues of the checkerboard Hankel matrix.
[[nodiscard]] inline CFResult cf_approx(const ChebSeries& s, std::size_t m, std::size_t n,
                                        const CFOptions& opts = {}) {
    if (!s.resolved) throw Error(ErrorCode::NotResolved, "Chebyshev series is not resolved");
    if (n > m) throw Error(ErrorCode::DomainError, "CF needs m >= n");

    double scale = 0.0, beyond = 0.0;
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) {
        scale = std::max(scale, std::abs(s.coeffs[k]));
        if (k > m) beyond = std::max(beyond, std::abs(s.coeffs[k]));
    }
    // a tail at rounding level means a polynomial of degree <= m
    if (s.degree() <= m || beyond <= 1e-15 * scale) {
        CFResult out;
        out.m = m;
        out.n = n;
        out.approximant.num.assign(s.coeffs.begin(),
                                   s.coeffs.begin() + static_cast<long>(std::min(m, s.degree())) + 1);
        out.approximant.den = {1.0};
        return out;
    }

    if (opts.exploit_symmetry && is_even_series(s, opts.parity_tol) && s.degree() >= 2) {
        ChebSeries reduced;
        reduced.coeffs.clear();
        for (std::size_t k = 0; k < s.coeffs.size(); k += 2) reduced.coeffs.push_back(s.coeffs[k]);
        reduced.resolved = true;
        CFOptions inner = opts;
        inner.exploit_symmetry = false;
        CFResult r = cf_approx(reduced, m / 2, n / 2, inner);

        auto spread = [](const std::vector<double>& c) {
            std::vector<double> e(2 * c.size() - 1, 0.0);
            for (std::size_t k = 0; k < c.size(); ++k) e[2 * k] = c[k];
            return e;
        };
        r.approximant.num = spread(r.approximant.num);
        r.approximant.den = spread(r.approximant.den);
        std::vector<cplx> roots;
        for (const auto& tau : r.den_roots) {
            const cplx w = std::sqrt((1.0 + tau) / 2.0);
            roots.push_back(w);
            roots.push_back(-w);
        }
        r.den_roots = std::move(roots);
        r.m = m;
        r.n = n;
        r.symmetry_reduced = true;
        return r;
    }
    return detail::cf_general(s, m, n, opts);
}

}  // namespace whfact

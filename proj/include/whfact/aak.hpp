// SPDX-License-Identifier: MIT
#pragma once

/// \file aak.hpp
///
/// Best approximation on the unit circle from H-infinity plus n poles. The
/// distance is the n-th singular value s_n of the Hankel matrix of the
/// anti-analytic Fourier coefficients, and with the Schmidt pair
/// H xi = s_n eta the approximant is
///
///     h = f - s_n eta_-(z) / xi_+(z),  xi_+ = sum xi_j z^{j-1},  eta_- = sum eta_j z^{-j}.
///
/// The finite section of the Hankel operator stands in for the infinite one.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "whfact/detail/fft.hpp"
#include "whfact/error.hpp"

namespace whfact {

/// Fourier coefficients c_{-N/2}..c_{N/2} (index k + N/2) of N equispaced
/// samples of f on the unit circle. The Nyquist term is split evenly
/// between the two end entries.
template <typename F>
[[nodiscard]] std::vector<std::complex<double>> circle_fourier_coeffs(F&& f, std::size_t n) {
    using cplx = std::complex<double>;
    if (n < 2 || (n & (n - 1)) != 0) throw Error(ErrorCode::DomainError, "N must be a power of two");
    std::vector<cplx> samples(n);
    for (std::size_t j = 0; j < n; ++j) {
        samples[j] = f(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n)));
    }
    const auto spec = detail::fft_forward(samples);
    const std::size_t half = n / 2;
    std::vector<cplx> c(n + 1);
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t k = 1; k < half; ++k) {
        c[half + k] = spec[k] * inv;
        c[half - k] = spec[n - k] * inv;
    }
    c[half] = spec[0] * inv;
    c[0] = c[n] = 0.5 * spec[half] * inv;
    return c;
}

struct AAKResult {
    using cplx = std::complex<double>;

    double distance = 0.0;
    std::vector<cplx> xi;   // right Schmidt vector, coefficients of xi_+
    std::vector<cplx> eta;  // left Schmidt vector, coefficients of eta_-
    std::vector<double> singular_values;
    std::size_t order = 0;
    bool rank_deficient = false;
    std::vector<cplx> coeffs;  // input, ascending frequency

    /// f - h = s_n eta_-(z) / xi_+(z).
    [[nodiscard]] cplx residual(cplx z) const {
        if (distance == 0.0 || xi.empty()) return cplx(0.0);
        cplx num(0.0), den(0.0);
        const cplx w = 1.0 / z;
        for (std::size_t j = eta.size(); j-- > 0;) num = (num + eta[j]) * w;
        for (std::size_t j = xi.size(); j-- > 0;) den = den * z + xi[j];
        return distance * num / den;
    }

    [[nodiscard]] cplx f(cplx z) const {
        const auto centre = static_cast<long>((coeffs.size() - 1) / 2);
        cplx v(0.0);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            v += coeffs[k] * std::pow(z, static_cast<int>(static_cast<long>(k) - centre));
        }
        return v;
    }

    [[nodiscard]] cplx approximant(cplx z) const { return f(z) - residual(z); }
};

/// coeffs: c_{-L}..c_{L} in ascending frequency (odd length).
[[nodiscard]] inline AAKResult aak_approx(const std::vector<std::complex<double>>& coeffs, std::size_t n,
                                          std::size_t max_order = 512) {
    using cplx = std::complex<double>;
    if (coeffs.empty() || coeffs.size() % 2 == 0) {
        throw Error(ErrorCode::DomainError, "coefficient list must run symmetrically from -L to L");
    }
    const std::size_t centre = (coeffs.size() - 1) / 2;
    AAKResult r;
    r.coeffs = coeffs;

    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    std::size_t order = 0;
    for (std::size_t k = 1; k <= centre; ++k) {
        if (std::abs(coeffs[centre - k]) > 1e-14 * scale) order = k;
    }
    order = std::min(order, max_order);
    r.order = order;
    if (order == 0) return r;  // analytic: h = f

    const auto k = static_cast<Eigen::Index>(order);
    Eigen::MatrixXcd h(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i + j + 1);
            h(i, j) = idx <= centre ? coeffs[centre - idx] : cplx(0.0);
        }
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) r.singular_values.push_back(s(i));

    if (n >= order || s(static_cast<Eigen::Index>(n)) < 1e-14 * s(0)) {
        r.rank_deficient = true;
        return r;
    }
    const auto col = static_cast<Eigen::Index>(n);
    Eigen::VectorXcd v = svd.matrixV().col(col);
    Eigen::VectorXcd u = svd.matrixU().col(col);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-14) {
            const cplx phase = std::abs(v(i)) / v(i);
            v *= phase;
            u *= phase;
            break;
        }
    }
    r.distance = s(col);
    r.xi.assign(v.data(), v.data() + v.size());
    r.eta.assign(u.data(), u.data() + u.size());
    return r;
}

}  // namespace whfact

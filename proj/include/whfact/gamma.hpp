// SPDX-License-Identifier: MIT
#pragma once

/// \file gamma.hpp
///
/// Complex log-Gamma (Lanczos, g = 7) and an accurate log of Gamma ratios
/// for large arguments.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "whfact/error.hpp"

namespace whfact {

namespace detail {

inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_coeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

// log(1 + z) without cancellation for small |z|
inline std::complex<double> log1p_c(std::complex<double> z) {
    const std::complex<double> u = 1.0 + z;
    if (u == std::complex<double>(1.0)) return z;
    return std::log(u) * z / (u - 1.0);
}

}  // namespace detail

/// Principal branch of log Gamma(w) on the plane cut along the negative axis
/// (continuous away from it; imaginary part not unwrapped).
[[nodiscard]] inline std::complex<double> complex_log_gamma(std::complex<double> w) {
    using cplx = std::complex<double>;
    if (w.imag() == 0.0 && w.real() <= 0.0 && w.real() == std::floor(w.real())) {
        throw Error(ErrorCode::PoleOfGamma, "Gamma has a pole at a nonpositive integer");
    }
    if (w.real() < 0.5) {
        // log Gamma(w) = log(pi / sin(pi w)) - log Gamma(1 - w)
        return std::log(std::numbers::pi) - std::log(std::sin(std::numbers::pi * w)) -
               complex_log_gamma(1.0 - w);
    }
    const cplx z = w - 1.0;
    cplx sum = detail::lanczos_coeffs[0];
    for (std::size_t k = 1; k < detail::lanczos_coeffs.size(); ++k) {
        sum += detail::lanczos_coeffs[k] / (z + static_cast<double>(k));
    }
    const cplx t = z + detail::lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

/// log(Gamma(w + a) / Gamma(w + b)) for real a, b. For |w| >= 20 the
/// Stirling difference is used so that the absolute error stays at rounding
/// level instead of growing like |w log w|.
[[nodiscard]] inline std::complex<double> log_gamma_ratio(std::complex<double> w, double a, double b) {
    using cplx = std::complex<double>;
    if (std::abs(w) < 20.0 || std::abs(std::arg(w)) > 2.5) {
        return complex_log_gamma(w + a) - complex_log_gamma(w + b);
    }
    // Bernoulli numbers B_2..B_16
    static constexpr std::array<double, 8> bern = {1.0 / 6,   -1.0 / 30, 1.0 / 42,    -1.0 / 30,
                                                   5.0 / 66,  -691.0 / 2730, 7.0 / 6, -3617.0 / 510};
    cplx v = (a - b) * std::log(w) + (w + a - 0.5) * detail::log1p_c(a / w) -
             (w + b - 0.5) * detail::log1p_c(b / w) + (b - a);
    for (std::size_t k = 1; k <= bern.size(); ++k) {
        const double kk = static_cast<double>(k);
        const double c = bern[k - 1] / (2.0 * kk * (2.0 * kk - 1.0));
        v += c * (std::pow(w + a, 1.0 - 2.0 * kk) - std::pow(w + b, 1.0 - 2.0 * kk));
    }
    return v;
}

}  // namespace whfact

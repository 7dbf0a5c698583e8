// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace whfact::detail {

/// Forward DFT, X_k = sum_j x_j exp(-2 pi i j k / N).
[[nodiscard]] inline std::vector<std::complex<double>>
fft_forward(std::span<const std::complex<double>> x) {
    Eigen::FFT<double> engine;
    std::vector<std::complex<double>> in(x.begin(), x.end());
    std::vector<std::complex<double>> out;
    engine.fwd(out, in);
    return out;
}

/// Chebyshev coefficients a_0..a_N of the degree-N interpolant through
/// values[j] = f(cos(pi j / N)), j = 0..N (DCT-I through a length-2N FFT).
[[nodiscard]] inline std::vector<double> dct1_cheb_coeffs(std::span<const double> values) {
    const std::size_t n = values.size() - 1;
    if (n == 0) return {values[0]};
    std::vector<std::complex<double>> ext(2 * n);
    for (std::size_t j = 0; j <= n; ++j) ext[j] = values[j];
    for (std::size_t j = 1; j < n; ++j) ext[2 * n - j] = values[j];
    const auto spectrum = fft_forward(ext);
    std::vector<double> a(n + 1);
    for (std::size_t k = 0; k <= n; ++k) a[k] = spectrum[k].real() / static_cast<double>(n);
    a[0] *= 0.5;
    a[n] *= 0.5;
    return a;
}

[[nodiscard]] constexpr std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

}  // namespace whfact::detail

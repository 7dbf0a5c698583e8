// SPDX-License-Identifier: MIT
#pragma once

/// \file conformal_map.hpp
///
/// Transport between the real line and [-1, 1].
///
///  - EvenJM:      x = (y'^2 - 1) / (y'^2 + 1), the Moebius map onto the unit
///                 circle followed by the Joukowski projection. Two-to-one, so
///                 only even functions survive the trip.
///  - GeneralJSM:  x = y' / sqrt(y'^2 + 1), with the extra squaring on the
///                 circle so that the whole line fits on half the circle.
///  - LinearTruncation(a, b): affine map of [a, b] onto [-1, 1]. Values
///                 outside [a, b] are not controlled.
///
/// y' = (y - shift) / scale is the preconditioning applied first.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "whfact/chebyshev.hpp"
#include "whfact/error.hpp"

namespace whfact {

enum class MapKind { EvenJM, GeneralJSM, LinearTruncation };

struct RealLineMap {
    MapKind kind = MapKind::GeneralJSM;
    double scale = 1.0;
    double shift = 0.0;
    double a = -1.0;  // LinearTruncation interval
    double b = 1.0;

    [[nodiscard]] static RealLineMap even(double scale = 1.0, double shift = 0.0) {
        return {MapKind::EvenJM, scale, shift};
    }
    [[nodiscard]] static RealLineMap general(double scale = 1.0, double shift = 0.0) {
        return {MapKind::GeneralJSM, scale, shift};
    }
    [[nodiscard]] static RealLineMap truncation(double a, double b) {
        if (!(a < b)) throw Error(ErrorCode::DomainError, "truncation interval needs a < b");
        return {MapKind::LinearTruncation, 1.0, 0.0, a, b};
    }
};

[[nodiscard]] inline std::string map_name(MapKind kind) {
    switch (kind) {
    case MapKind::EvenJM: return "even";
    case MapKind::GeneralJSM: return "general";
    case MapKind::LinearTruncation: return "truncate";
    }
    return "unknown";
}

/// M(y) = (-1 + i y) / (1 + i y): sends 1 to i, -1 to -i and infinity to 1.
/// The upper half-plane goes to the exterior of the unit disk.
[[nodiscard]] inline std::complex<double> mobius_to_circle(std::complex<double> y) {
    const std::complex<double> i(0.0, 1.0);
    return (-1.0 + i * y) / (1.0 + i * y);
}

[[nodiscard]] inline std::complex<double> mobius_from_circle(std::complex<double> z) {
    const std::complex<double> i(0.0, 1.0);
    return i * (1.0 + z) / (z - 1.0);
}

[[nodiscard]] inline double map_forward(const RealLineMap& m, double y) {
    if (m.kind == MapKind::LinearTruncation) {
        return (2.0 * y - m.a - m.b) / (m.b - m.a);
    }
    if (std::isinf(y)) {
        if (m.kind == MapKind::EvenJM) return 1.0;
        return y > 0 ? 1.0 : -1.0;
    }
    const double t = (y - m.shift) / m.scale;
    if (m.kind == MapKind::EvenJM) {
        if (std::abs(t) > 1e150) return 1.0;
        const double t2 = t * t;
        return (t2 - 1.0) / (t2 + 1.0);
    }
    return t / std::hypot(t, 1.0);
}

/// Inverse on (-1, 1); the EvenJM branch returns the representative y' >= 0.
[[nodiscard]] inline double map_inverse(const RealLineMap& m, double x) {
    if (m.kind == MapKind::LinearTruncation) {
        return 0.5 * ((m.b - m.a) * x + m.a + m.b);
    }
    if (!(std::abs(x) < 1.0)) {
        throw Error(ErrorCode::DomainError, "map_inverse needs |x| < 1");
    }
    double t = 0.0;
    if (m.kind == MapKind::EvenJM) {
        t = std::sqrt((1.0 + x) / (1.0 - x));
    } else {
        // 1 - x^2 = (1 - x)(1 + x) keeps precision near the endpoints
        t = x / std::sqrt((1.0 - x) * (1.0 + x));
    }
    return m.shift + m.scale * t;
}

/// Endpoint value of the transported function: the kernel's limit at infinity.
struct TransportOptions {
    double value_at_infinity = std::numeric_limits<double>::quiet_NaN();
    double evenness_tol = 1e-10;
};

namespace detail {

template <typename F>
void check_even(const F& f, const RealLineMap& m, double tol) {
    for (int j = 0; j <= 80; ++j) {
        const double t = m.scale * std::pow(10.0, -4.0 + 0.1 * j);
        const double left = f(m.shift - t);
        const double right = f(m.shift + t);
        const double size = std::max({std::abs(left), std::abs(right), 1e-300});
        if (std::abs(left - right) > tol * size) {
            throw Error(ErrorCode::NotEven,
                        "function is not even about the shift point (t = " + std::to_string(t) + ")");
        }
    }
}

}  // namespace detail

/// Returns x -> F(map_inverse(x)) on [-1, 1], with the endpoints that
/// correspond to infinity taken from `opts.value_at_infinity`.
template <typename F>
[[nodiscard]] std::function<double(double)>
transport_to_interval(F f, const RealLineMap& m, const TransportOptions& opts = {}) {
    if (m.kind == MapKind::EvenJM) detail::check_even(f, m, opts.evenness_tol);
    const double at_inf = opts.value_at_infinity;
    return [f, m, at_inf](double x) -> double {
        if (m.kind == MapKind::LinearTruncation) return f(map_inverse(m, x));
        if (x >= 1.0) {
            if (std::isnan(at_inf)) {
                throw Error(ErrorCode::DomainError, "limit at infinity not supplied");
            }
            return at_inf;
        }
        if (x <= -1.0) {
            if (m.kind == MapKind::EvenJM) return f(m.shift);
            if (std::isnan(at_inf)) {
                throw Error(ErrorCode::DomainError, "limit at infinity not supplied");
            }
            return at_inf;
        }
        return f(map_inverse(m, x));
    };
}

/// Rational Chebyshev function TB_n(y) = T_n(y / sqrt(y^2 + 1)).
[[nodiscard]] inline double rational_chebyshev(int n, double y) {
    const double x = std::isinf(y) ? (y > 0 ? 1.0 : -1.0) : y / std::hypot(y, 1.0);
    return std::cos(n * std::acos(std::clamp(x, -1.0, 1.0)));
}

/// Working grid on the real line: images of n first-kind Chebyshev points
/// under map_inverse. EvenJM grids are mirrored about the shift point.
[[nodiscard]] inline std::vector<double> working_grid(const RealLineMap& m, std::size_t n = 10000) {
    std::vector<double> y;
    y.reserve(n);
    if (m.kind == MapKind::EvenJM) {
        const std::size_t half = n / 2;
        for (std::size_t j = 0; j < half; ++j) {
            const double x = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) /
                                      static_cast<double>(half));
            const double t = map_inverse(m, x);
            y.push_back(t);
            y.push_back(2.0 * m.shift - t);
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            const double x =
                std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
            y.push_back(map_inverse(m, x));
        }
    }
    std::sort(y.begin(), y.end());
    return y;
}

}  // namespace whfact

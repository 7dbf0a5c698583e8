// SPDX-License-Identifier: MIT
#pragma once

/// \file pullback.hpp
///
/// Substitutes x = map_forward(y) into a rational function of x given by
/// Chebyshev coefficients and returns it in zero/pole/gain form in y.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "whfact/cf.hpp"
#include "whfact/chebyshev.hpp"
#include "whfact/conformal_map.hpp"
#include "whfact/error.hpp"
#include "whfact/rational.hpp"

namespace whfact {

namespace detail {

// x = (t^2 - 1)/(t^2 + 1): each x-root rho gives t = +-sqrt((1 + rho)/(1 - rho)),
// and a polynomial of degree d in x carries (t^2 + 1)^{-d}.
inline void pull_back_even_roots(const std::vector<cplx>& xroots, double scale, double shift,
                                 std::vector<cplx>& own, std::vector<cplx>& other_side) {
    const cplx i(0.0, 1.0);
    for (const auto& rho : xroots) {
        if (std::abs(1.0 - rho) > 1e-14) {
            const cplx w = std::sqrt((1.0 + rho) / (1.0 - rho));
            own.push_back(shift + scale * w);
            own.push_back(shift - scale * w);
        }
        other_side.push_back(shift + i * scale);
        other_side.push_back(shift - i * scale);
    }
}

inline double odd_part_ratio(const std::vector<double>& c) {
    double all = 0.0, odd = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        all = std::max(all, std::abs(c[k]));
        if (k % 2 == 1) odd = std::max(odd, std::abs(c[k]));
    }
    return all > 0.0 ? odd / all : 0.0;
}

inline std::vector<double> even_in_t(const std::vector<double>& c) {
    std::vector<double> e;
    for (std::size_t k = 0; k < c.size(); k += 2) e.push_back(c[k]);
    if (e.empty()) e.push_back(0.0);
    return e;
}

// Gain from one reference point chosen far from every root.
template <typename Target>
cplx fit_gain(const std::vector<cplx>& zeros, const std::vector<cplx>& poles, double centre,
              double width, Target target) {
    double best_y = centre, best_dist = -1.0;
    for (int j = 0; j <= 40; ++j) {
        const double y = centre + width * (-1.3 + 0.065 * j + 0.0123);
        double d = std::numeric_limits<double>::infinity();
        for (const auto& r : zeros) d = std::min(d, std::abs(y - r));
        for (const auto& r : poles) d = std::min(d, std::abs(y - r));
        if (d > best_dist) {
            best_dist = d;
            best_y = y;
        }
    }
    const RationalFunction unit(zeros, poles, cplx(1.0));
    return target(best_y) / unit(cplx(best_y));
}

}  // namespace detail

/// Returns r(map_forward(y)) as a rational function of y. EvenJM and
/// GeneralJSM give at most twice the x-degrees; GeneralJSM needs r even in x.
[[nodiscard]] inline RationalFunction pull_back_rational(const ChebRational& r, const RealLineMap& m,
                                                         double odd_tol = 1e-10) {
    if (m.kind == MapKind::LinearTruncation) {
        auto to_y = [&m](const std::vector<cplx>& xs) {
            std::vector<cplx> ys;
            for (const auto& x : xs) ys.push_back(0.5 * ((m.b - m.a) * x + m.a + m.b));
            return ys;
        };
        auto zeros = to_y(cheb_roots(r.num));
        auto poles = to_y(cheb_roots(r.den));
        const cplx gain = detail::fit_gain(zeros, poles, 0.5 * (m.a + m.b), 0.5 * (m.b - m.a),
                                           [&](double y) { return r(map_forward(m, y)); });
        return RationalFunction(std::move(zeros), std::move(poles), gain);
    }

    ChebRational in_t = r;
    if (m.kind == MapKind::GeneralJSM) {
        // x^2 = t^2/(t^2 + 1), so T_2(x) = (t^2 - 1)/(t^2 + 1) as for EvenJM
        if (detail::odd_part_ratio(r.num) > odd_tol || detail::odd_part_ratio(r.den) > odd_tol) {
            throw Error(ErrorCode::NotEvenApproximant,
                        "GeneralJSM pull-back needs an even approximant; square the kernel first");
        }
        in_t.num = detail::even_in_t(r.num);
        in_t.den = detail::even_in_t(r.den);
    }

    std::vector<cplx> zeros, poles;
    detail::pull_back_even_roots(cheb_roots(in_t.num), m.scale, m.shift, zeros, poles);
    detail::pull_back_even_roots(cheb_roots(in_t.den), m.scale, m.shift, poles, zeros);
    const RationalFunction reduced(zeros, poles, cplx(1.0));
    const cplx gain =
        detail::fit_gain(reduced.zeros(), reduced.poles(), m.shift, m.scale,
                         [&](double y) { return cplx(r(map_forward(m, y))); });
    return RationalFunction(reduced.zeros(), reduced.poles(), gain);
}

}  // namespace whfact

// SPDX-License-Identifier: MIT
#pragma once

/// \file pipeline.hpp
///
/// Kernel -> transport -> Chebyshev series -> CF -> pull-back -> split ->
/// certification, as one call.
///
/// The pulled-back approximant tends to a constant slightly off 1 at
/// infinity. Its gain is rescaled so that the limit is exactly 1 before
/// splitting; otherwise the residual would not decay and its L2 norm would
/// not exist. The sup residual of the unscaled CF approximant is reported
/// separately.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "whfact/bounds.hpp"
#include "whfact/cf.hpp"
#include "whfact/chebyshev.hpp"
#include "whfact/conformal_map.hpp"
#include "whfact/error.hpp"
#include "whfact/kernels.hpp"
#include "whfact/pullback.hpp"
#include "whfact/rational.hpp"

namespace whfact {

struct PipelineOptions {
    ChebOptions cheb{};
    CFOptions cf{};
    double p = 2.0;
    double bracket_margin = 0.05;  // relative widening of the grid extrema of |K|
    std::size_t grid_points = 10000;
    // Residuals are differences of O(1) values, so every sample carries
    // rounding noise and far-out samples eventually dominate. The quadrature
    // stops once the norm settles to lp_abs_fraction of the CF prediction.
    LpOptions lp{.tol = 1e-6};
    double lp_abs_fraction = 1e-3;
    double lp_abs_floor = 1e-14;
    SplitOptions split{};
    bool enforce_bound = true;  // throw BoundViolated instead of returning the report
};

struct ErrorReport {
    double sup_residual_grid = 0.0;    // CF approximant, uncertified
    double sup_residual_pinned = 0.0;  // approximant actually factorized, uncertified
    double l2_residual = 0.0;
    double cf_predicted = 0.0;
    double factor_bound_l2 = 0.0;
    std::optional<double> measured_factor_error_l2;
    BoundReport bound{};
    std::complex<double> approximant_at_infinity{1.0};  // before pinning
    std::size_t m_x = 0, n_x = 0, m_y = 0, n_y = 0;
    std::size_t cheb_degree = 0;
    RealLineMap map_used{};
    bool degenerate_spectrum = false;
    bool symmetry_reduced = false;
};

struct Factorization {
    FactorPair factors;
    RationalFunction approximant;  // pinned so that it tends to 1 at infinity
    ErrorReport report;
};

namespace detail {

inline std::function<double(double)> real_kernel(const KernelSpec& spec) {
    if (!spec.real_valued) {
        throw Error(ErrorCode::DomainError, "rational approximation path needs a real-valued kernel");
    }
    return [spec](double y) { return spec(y).real(); };
}

template <typename A, typename B>
double sup_difference(const std::vector<double>& grid, A&& a, B&& b) {
    double sup = 0.0;
    for (double y : grid) sup = std::max(sup, std::abs(a(y) - b(y)));
    return sup;
}

}  // namespace detail

/// CF approximation of a kernel on the real line, before any splitting.
struct KernelApproximation {
    CFResult cf;
    RationalFunction rk;
    std::size_t cheb_degree = 0;
};

[[nodiscard]] inline KernelApproximation approximate_kernel(const KernelSpec& spec, const RealLineMap& map,
                                                             std::size_t m, std::size_t n,
                                                             const PipelineOptions& opts = {}) {
    auto f = detail::real_kernel(spec);
    TransportOptions topts;
    topts.value_at_infinity = spec.value_at_infinity.real();
    auto on_interval = transport_to_interval(f, map, topts);
    const ChebSeries series = compute_cheb_series(on_interval, opts.cheb);
    KernelApproximation st;
    st.cheb_degree = series.degree();
    st.cf = cf_approx(series, m, n, opts.cf);
    st.rk = pull_back_rational(st.cf.approximant, map);
    return st;
}

/// Full factorization with an L_p certificate. Throws BoundViolated if the
/// measured factor error against the kernel's exact factors exceeds the
/// certified bound.
[[nodiscard]] inline Factorization factorize_kernel(const KernelSpec& spec, const RealLineMap& map,
                                                    std::size_t m, std::size_t n,
                                                    const PipelineOptions& opts = {}) {
    using cplx = std::complex<double>;
    if (map.kind == MapKind::LinearTruncation) {
        throw Error(ErrorCode::DomainError, "factorization needs a map of the whole real line");
    }
    if (std::abs(spec.value_at_infinity - cplx(1.0)) > 1e-8) {
        throw Error(ErrorCode::NonUnitLimit, "kernel must tend to 1 at infinity");
    }
    if (map.kind == MapKind::EvenJM && spec.parity != Parity::Even) {
        throw Error(ErrorCode::NotEven, "the even map needs an even kernel");
    }

    const auto st = approximate_kernel(spec, map, m, n, opts);
    Factorization out;
    ErrorReport& rep = out.report;
    rep.map_used = map;
    rep.m_x = m;
    rep.n_x = n;
    rep.cheb_degree = st.cheb_degree;
    rep.cf_predicted = st.cf.predicted_error;
    rep.degenerate_spectrum = st.cf.degenerate;
    rep.symmetry_reduced = st.cf.symmetry_reduced;
    rep.m_y = st.rk.zeros().size();
    rep.n_y = st.rk.poles().size();
    rep.approximant_at_infinity = st.rk.value_at_infinity();

    if (st.rk.index() != 0) throw Error(ErrorCode::NonUnitLimit, "approximant has unbalanced degrees in y");
    out.approximant = st.rk;
    out.approximant.scale_gain(1.0 / rep.approximant_at_infinity);
    out.factors = wh_split(out.approximant, opts.split);

    const auto grid = working_grid(map, opts.grid_points);
    auto k_of = [&spec](double y) { return spec(y); };
    rep.sup_residual_grid = detail::sup_difference(grid, k_of, [&](double y) { return st.rk(cplx(y)); });
    rep.sup_residual_pinned =
        detail::sup_difference(grid, k_of, [&](double y) { return out.approximant(cplx(y)); });

    LpOptions lp = opts.lp;
    lp.abs_tol = std::max(lp.abs_tol, std::max(opts.lp_abs_fraction * rep.cf_predicted, opts.lp_abs_floor));
    auto residual = [&](double y) { return spec(y) - out.approximant(cplx(y)); };
    rep.l2_residual = lp_norm(residual, 2.0, lp);
    const double eps_p = opts.p == 2.0 ? rep.l2_residual : lp_norm(residual, opts.p, lp);

    double kmin = std::abs(spec.value_at_infinity), kmax = kmin;
    for (double y : grid) {
        const double a = std::abs(spec(y));
        kmin = std::min(kmin, a);
        kmax = std::max(kmax, a);
    }
    rep.bound = multiplicative_bound(eps_p, opts.p, kmin * (1.0 - opts.bracket_margin),
                                     kmax * (1.0 + opts.bracket_margin), spec.real_valued);
    rep.factor_bound_l2 = rep.bound.factor_bound;

    if (spec.exact_factors) {
        const auto& ex = *spec.exact_factors;
        const double ep = lp_norm([&](double y) { return ex.plus(cplx(y)) - out.factors.plus(cplx(y)); },
                                  opts.p, lp);
        const double em = lp_norm([&](double y) { return ex.minus(cplx(y)) - out.factors.minus(cplx(y)); },
                                  opts.p, lp);
        rep.measured_factor_error_l2 = std::max(ep, em);
        if (opts.enforce_bound && *rep.measured_factor_error_l2 > rep.factor_bound_l2) {
            throw Error(ErrorCode::BoundViolated, "measured factor error exceeds the certified bound");
        }
    }
    return out;
}

/// Domain truncation: CF on [a, b] mapped linearly, with no control outside.
struct TruncationReport {
    double sup_in = 0.0;          // grid sup on [a, b]
    double sup_out = 0.0;         // grid sup on [a - (b - a), a] and [b, b + (b - a)]
    double residual_at_2b = 0.0;  // |K(2b) - K~(2b)|
    double cf_predicted = 0.0;
    std::size_t m = 0, n = 0;
    std::size_t cheb_degree = 0;
    RealLineMap map_used{};
    RationalFunction approximant;
};

[[nodiscard]] inline TruncationReport compare_truncation(const KernelSpec& spec, double a, double b,
                                                         std::size_t m, std::size_t n,
                                                         const PipelineOptions& opts = {}) {
    using cplx = std::complex<double>;
    const RealLineMap map = RealLineMap::truncation(a, b);
    const auto st = approximate_kernel(spec, map, m, n, opts);
    TruncationReport rep;
    rep.m = m;
    rep.n = n;
    rep.cheb_degree = st.cheb_degree;
    rep.cf_predicted = st.cf.predicted_error;
    rep.map_used = map;
    rep.approximant = st.rk;

    auto k_of = [&spec](double y) { return spec(y); };
    auto r_of = [&st](double y) { return st.rk(cplx(y)); };
    const auto inside = working_grid(map, opts.grid_points);
    rep.sup_in = detail::sup_difference(inside, k_of, r_of);

    const double w = b - a;
    std::vector<double> outside;
    const std::size_t half = opts.grid_points / 2;
    for (std::size_t j = 0; j <= half; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(half);
        outside.push_back(b + w * t);
        outside.push_back(a - w * t);
    }
    rep.sup_out = detail::sup_difference(outside, k_of, r_of);
    rep.residual_at_2b = std::abs(spec(2.0 * b) - st.rk(cplx(2.0 * b)));
    return rep;
}

}  // namespace whfact

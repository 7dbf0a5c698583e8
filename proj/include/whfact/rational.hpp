// SPDX-License-Identifier: MIT
#pragma once

/// \file rational.hpp
///
/// Rational functions of the real-line variable in zero/pole/gain form and
/// their Wiener-Hopf splitting by half-plane inspection.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "whfact/detail/linalg.hpp"
#include "whfact/error.hpp"

namespace whfact {

using cplx = std::complex<double>;

namespace detail {

inline bool root_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

inline bool roots_coincide(const cplx& a, const cplx& b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace detail

/// gain * prod(y - zeros) / prod(y - poles). Coincident zero/pole pairs are
/// cancelled on construction and both lists are kept sorted.
class RationalFunction {
public:
    static constexpr double cancel_tol = 1e-12;

    RationalFunction() = default;
    explicit RationalFunction(cplx gain) : gain_(gain) {}
    RationalFunction(std::vector<cplx> zeros, std::vector<cplx> poles, cplx gain)
        : zeros_(std::move(zeros)), poles_(std::move(poles)), gain_(gain) {
        normalize();
    }

    [[nodiscard]] const std::vector<cplx>& zeros() const noexcept { return zeros_; }
    [[nodiscard]] const std::vector<cplx>& poles() const noexcept { return poles_; }
    [[nodiscard]] cplx gain() const noexcept { return gain_; }
    [[nodiscard]] int index() const noexcept {
        return static_cast<int>(zeros_.size()) - static_cast<int>(poles_.size());
    }

    /// Limit as y -> infinity; only finite when the degrees balance.
    [[nodiscard]] cplx value_at_infinity() const {
        if (zeros_.size() == poles_.size()) return gain_;
        if (zeros_.size() < poles_.size()) return cplx(0.0);
        return cplx(std::numeric_limits<double>::infinity());
    }

    [[nodiscard]] cplx operator()(cplx w) const {
        cplx v = gain_;
        for (const auto& z : zeros_) v *= (w - z);
        for (const auto& p : poles_) {
            if (std::abs(w - p) <= 1e-15 * std::max(1.0, std::abs(p))) {
                throw Error(ErrorCode::PoleEvaluation, "rational function evaluated at a pole");
            }
            v /= (w - p);
        }
        return v;
    }

    RationalFunction& scale_gain(cplx factor) {
        gain_ *= factor;
        return *this;
    }

private:
    void normalize() {
        std::vector<cplx> kept_zeros;
        for (const auto& z : zeros_) {
            auto it = std::find_if(poles_.begin(), poles_.end(), [&](const cplx& p) {
                return detail::roots_coincide(z, p, cancel_tol);
            });
            if (it != poles_.end()) {
                poles_.erase(it);
            } else {
                kept_zeros.push_back(z);
            }
        }
        zeros_ = std::move(kept_zeros);
        std::sort(zeros_.begin(), zeros_.end(), detail::root_less);
        std::sort(poles_.begin(), poles_.end(), detail::root_less);
    }

    std::vector<cplx> zeros_;
    std::vector<cplx> poles_;
    cplx gain_{1.0};
};

[[nodiscard]] inline cplx eval_rational(const RationalFunction& r, cplx w) { return r(w); }

/// Roots of sum_k c_k y^k (ascending order) from the balanced companion matrix.
[[nodiscard]] inline std::vector<cplx> poly_roots(std::span<const cplx> c_in) {
    std::size_t n = c_in.size();
    while (n > 0 && c_in[n - 1] == cplx(0.0)) --n;
    if (n <= 1) return {};
    std::size_t lead_zeros = 0;
    while (c_in[lead_zeros] == cplx(0.0)) ++lead_zeros;
    std::vector<cplx> roots(lead_zeros, cplx(0.0));
    std::span<const cplx> c = c_in.subspan(lead_zeros, n - lead_zeros);
    const std::size_t deg = c.size() - 1;
    if (deg == 0) return roots;
    if (deg == 1) {
        roots.push_back(-c[0] / c[1]);
        return roots;
    }
    const auto d = static_cast<Eigen::Index>(deg);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 1; i < d; ++i) a(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < d; ++i) a(i, d - 1) = -c[static_cast<std::size_t>(i)] / c[deg];
    detail::balance_matrix(a);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::DomainError, "companion eigenvalue iteration failed");
    }
    for (Eigen::Index i = 0; i < d; ++i) roots.push_back(solver.eigenvalues()(i));
    return roots;
}

/// Ascending-order coefficient lists to zero/pole/gain form.
[[nodiscard]] inline RationalFunction from_poly_coeffs(std::span<const cplx> num,
                                                       std::span<const cplx> den) {
    auto degree = [](std::span<const cplx> c) -> long {
        long d = static_cast<long>(c.size()) - 1;
        while (d >= 0 && c[static_cast<std::size_t>(d)] == cplx(0.0)) --d;
        return d;
    };
    const long dn = degree(num);
    const long dd = degree(den);
    if (dd < 0) throw Error(ErrorCode::ZeroDenominator, "denominator is identically zero");
    if (dn < 0) return RationalFunction(cplx(0.0));
    const cplx gain = num[static_cast<std::size_t>(dn)] / den[static_cast<std::size_t>(dd)];
    return RationalFunction(poly_roots(num.first(static_cast<std::size_t>(dn) + 1)),
                            poly_roots(den.first(static_cast<std::size_t>(dd) + 1)), gain);
}

[[nodiscard]] inline RationalFunction from_poly_coeffs(std::span<const double> num,
                                                       std::span<const double> den) {
    std::vector<cplx> n(num.begin(), num.end());
    std::vector<cplx> d(den.begin(), den.end());
    return from_poly_coeffs(std::span<const cplx>(n), std::span<const cplx>(d));
}

/// base(y) times half powers (y - c)^{1/2} and (y - d)^{-1/2}. Half zeros and
/// half poles are paired in sorted order and each pair is evaluated as one
/// principal square root, which puts the branch cut on the segment joining
/// the pair; unpaired factors keep the principal cut running left from the
/// branch point, parallel to the real axis.
struct HalfPowerFactor {
    RationalFunction base;
    std::vector<cplx> half_zeros;
    std::vector<cplx> half_poles;

    [[nodiscard]] cplx value_at_infinity() const {
        if (half_zeros.size() != half_poles.size()) {
            return half_zeros.size() < half_poles.size()
                       ? cplx(0.0)
                       : cplx(std::numeric_limits<double>::infinity());
        }
        return base.value_at_infinity();
    }

    [[nodiscard]] cplx operator()(cplx w) const {
        cplx v = base(w);
        const std::size_t pairs = std::min(half_zeros.size(), half_poles.size());
        for (std::size_t i = 0; i < pairs; ++i) {
            v *= std::sqrt((w - half_zeros[i]) / (w - half_poles[i]));
        }
        for (std::size_t i = pairs; i < half_zeros.size(); ++i) v *= std::sqrt(w - half_zeros[i]);
        for (std::size_t i = pairs; i < half_poles.size(); ++i) v /= std::sqrt(w - half_poles[i]);
        return v;
    }
};

[[nodiscard]] inline cplx eval_rational(const HalfPowerFactor& r, cplx w) { return r(w); }

/// Plus factor: zeros and poles in the lower half-plane, so it is analytic and
/// zero-free above. Minus factor: the upper half-plane ones.
template <typename Factor>
struct BasicFactorPair {
    Factor plus;
    Factor minus;
    bool index_balanced = true;
    int index = 0;  // zeros minus poles carried by the plus factor
};

using FactorPair = BasicFactorPair<RationalFunction>;
using SqrtFactorPair = BasicFactorPair<HalfPowerFactor>;

struct SplitOptions {
    double im_tol = 1e-9;
    double unit_limit_tol = 1e-8;
    bool require_unit_limit = true;
};

namespace detail {

inline void partition_by_half_plane(const std::vector<cplx>& roots, double im_tol,
                                    std::vector<cplx>& lower, std::vector<cplx>& upper) {
    for (const auto& r : roots) {
        if (std::abs(r.imag()) < im_tol) {
            throw Error(ErrorCode::RootOnContour,
                        "root within the contour band at " + std::to_string(r.real()) + " + " +
                            std::to_string(r.imag()) + "i");
        }
        (r.imag() < 0.0 ? lower : upper).push_back(r);
    }
}

}  // namespace detail

/// Factorization of a rational kernel by inspection. All of the gain goes on
/// the plus factor; the minus factor is monic. When a factor has unequal zero
/// and pole counts the kernel has nonzero index: the pair is flagged and the
/// plus factor carries the monomial growth at infinity.
[[nodiscard]] inline FactorPair wh_split(const RationalFunction& r, const SplitOptions& opts = {}) {
    std::vector<cplx> zl, zu, pl, pu;
    detail::partition_by_half_plane(r.zeros(), opts.im_tol, zl, zu);
    detail::partition_by_half_plane(r.poles(), opts.im_tol, pl, pu);
    FactorPair out;
    out.index = static_cast<int>(zl.size()) - static_cast<int>(pl.size());
    out.index_balanced = out.index == 0 && zu.size() == pu.size();
    if (out.index_balanced && opts.require_unit_limit &&
        std::abs(r.gain() - cplx(1.0)) > opts.unit_limit_tol) {
        throw Error(ErrorCode::NonUnitLimit,
                    "kernel does not tend to 1 at infinity (gain " + std::to_string(std::abs(r.gain())) +
                        ")");
    }
    out.plus = RationalFunction(std::move(zl), std::move(pl), r.gain());
    out.minus = RationalFunction(std::move(zu), std::move(pu), cplx(1.0));
    return out;
}

/// Splits sqrt(r) for an even rational r that is positive on the real line.
[[nodiscard]] inline SqrtFactorPair sqrt_factor(const RationalFunction& r, const SplitOptions& opts = {}) {
    auto symmetric = [](const std::vector<cplx>& roots) {
        for (const auto& c : roots) {
            const bool found = std::any_of(roots.begin(), roots.end(), [&](const cplx& d) {
                return detail::roots_coincide(d, -c, 1e-9);
            });
            if (!found) return false;
        }
        return true;
    };
    if (!symmetric(r.zeros()) || !symmetric(r.poles())) {
        throw Error(ErrorCode::NotEven, "zeros and poles are not symmetric under y -> -y");
    }
    if (std::abs(r.gain().imag()) > 1e-12 * std::abs(r.gain()) || r.gain().real() <= 0.0) {
        throw Error(ErrorCode::NotEven, "kernel gain must be real and positive");
    }
    std::vector<cplx> zl, zu, pl, pu;
    detail::partition_by_half_plane(r.zeros(), opts.im_tol, zl, zu);
    detail::partition_by_half_plane(r.poles(), opts.im_tol, pl, pu);
    SqrtFactorPair out;
    out.index = static_cast<int>(zl.size()) - static_cast<int>(pl.size());
    out.index_balanced = out.index == 0;
    if (out.index_balanced && opts.require_unit_limit &&
        std::abs(r.gain() - cplx(1.0)) > opts.unit_limit_tol) {
        throw Error(ErrorCode::NonUnitLimit, "kernel does not tend to 1 at infinity");
    }
    out.plus = HalfPowerFactor{RationalFunction(std::sqrt(r.gain())), std::move(zl), std::move(pl)};
    out.minus = HalfPowerFactor{RationalFunction(cplx(1.0)), std::move(zu), std::move(pu)};
    return out;
}

}  // namespace whfact

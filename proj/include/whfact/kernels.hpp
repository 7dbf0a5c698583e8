// SPDX-License-Identifier: MIT
#pragma once

/// \file kernels.hpp
///
/// Built-in kernels with closed-form factors, and an FFT factorization oracle
/// independent of the rational approximation path.
///
/// The oracle moves y to the unit circle with z = M(y). The upper half-plane
/// lands outside the disk, so the plus part of a function is carried by the
/// nonpositive frequencies and the minus part by the positive ones.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "whfact/conformal_map.hpp"
#include "whfact/detail/fft.hpp"
#include "whfact/error.hpp"
#include "whfact/gamma.hpp"

namespace whfact {

enum class Parity { Even, Odd, None };

struct ExactFactors {
    std::function<std::complex<double>(std::complex<double>)> plus;
    std::function<std::complex<double>(std::complex<double>)> minus;
};

struct KernelSpec {
    std::string name;
    std::map<std::string, double> parameters;
    std::function<std::complex<double>(double)> evaluator;
    std::complex<double> value_at_infinity{1.0};
    Parity parity = Parity::None;
    std::optional<ExactFactors> exact_factors;
    std::size_t oracle_grid = 4096;
    bool real_valued = true;

    [[nodiscard]] std::complex<double> operator()(double y) const { return evaluator(y); }
};

/// sqrt((y^2 + 1)/(y^2 + k^2)), plus factor sqrt((y + i)/(y + ik)).
[[nodiscard]] inline KernelSpec example1_kernel(double k = 2.0) {
    using cplx = std::complex<double>;
    if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorCode::DomainError, "example1 needs k > 0");
    KernelSpec s;
    s.name = "example1";
    s.parameters = {{"k", k}};
    s.evaluator = [k](double y) {
        const double y2 = y * y;
        return cplx(std::sqrt((y2 + 1.0) / (y2 + k * k)));
    };
    s.parity = Parity::Even;
    const cplx i(0.0, 1.0);
    s.exact_factors = ExactFactors{
        [k, i](cplx w) { return std::sqrt((w + i) / (w + i * k)); },
        [k, i](cplx w) { return std::sqrt((w - i) / (w - i * k)); },
    };
    return s;
}

namespace detail {

// e^{-i pi/4} Gamma(1/2 - iw/pi) / (sqrt(pi) Gamma(1 - iw/pi)) (i + w)^{1/2}
inline std::complex<double> example2_plus(std::complex<double> w) {
    using cplx = std::complex<double>;
    const cplx i(0.0, 1.0);
    const cplx s = -i * w / std::numbers::pi;
    const cplx ratio = std::exp(log_gamma_ratio(s, 0.5, 1.0));
    return std::polar(1.0, -std::numbers::pi / 4.0) * ratio / std::sqrt(std::numbers::pi) * std::sqrt(i + w);
}

}  // namespace detail

/// sqrt(y^2 + 1) tanh(y) / y, equal to 1 at y = 0.
[[nodiscard]] inline KernelSpec example2_kernel() {
    using cplx = std::complex<double>;
    KernelSpec s;
    s.name = "example2";
    s.evaluator = [](double y) {
        const double ay = std::abs(y);
        double q;
        if (ay < 1e-4) {
            const double y2 = y * y;
            q = 1.0 - y2 / 3.0 + 2.0 * y2 * y2 / 15.0;
        } else {
            q = std::tanh(ay) / ay;
        }
        return cplx(std::hypot(1.0, y) * q);
    };
    s.parity = Parity::Even;
    s.exact_factors = ExactFactors{
        [](cplx w) { return detail::example2_plus(w); },
        [](cplx w) { return detail::example2_plus(-w); },
    };
    s.oracle_grid = 8192;
    return s;
}

/// K = c everywhere; for tests of the trivial paths.
[[nodiscard]] inline KernelSpec constant_kernel(double c = 1.0) {
    using cplx = std::complex<double>;
    KernelSpec s;
    s.name = "constant";
    s.parameters = {{"c", c}};
    s.evaluator = [c](double) { return cplx(c); };
    s.value_at_infinity = c;
    s.parity = Parity::Even;
    const double root = std::sqrt(c);
    s.exact_factors = ExactFactors{[root](cplx) { return cplx(root); }, [root](cplx) { return cplx(root); }};
    return s;
}

[[nodiscard]] inline std::vector<KernelSpec> builtin_kernels() {
    return {example1_kernel(), example2_kernel()};
}

/// Looks up a built-in by name; unknown parameter names are rejected.
[[nodiscard]] inline KernelSpec make_kernel(const std::string& name,
                                            const std::map<std::string, double>& params = {}) {
    auto reject_extra = [&](std::initializer_list<const char*> allowed) {
        for (const auto& [key, value] : params) {
            bool ok = false;
            for (const char* a : allowed) ok = ok || key == a;
            if (!ok) throw Error(ErrorCode::DomainError, "kernel " + name + " has no parameter '" + key + "'");
        }
    };
    if (name == "example1") {
        reject_extra({"k"});
        const auto it = params.find("k");
        return example1_kernel(it == params.end() ? 2.0 : it->second);
    }
    if (name == "example2") {
        reject_extra({});
        return example2_kernel();
    }
    throw Error(ErrorCode::UnknownKernel, "unknown kernel '" + name + "'");
}

/// Checks that K has no zero on the working grid and that the declared limit
/// matches K far out.
inline void validate_kernel(const KernelSpec& k) {
    for (double y : working_grid(RealLineMap::general(), 2000)) {
        if (std::abs(k(y)) == 0.0 || !std::isfinite(std::abs(k(y)))) {
            throw Error(ErrorCode::DomainError, "kernel vanishes or is not finite at y = " + std::to_string(y));
        }
    }
    for (double y : {1e8, -1e8}) {
        if (std::abs(k(y) - k.value_at_infinity) > 1e-6) {
            throw Error(ErrorCode::DomainError, "kernel tail disagrees with its declared limit at infinity");
        }
    }
}

/// Additive split f = f_+ + f_- from N Fourier coefficients on the circle.
/// f_+ is analytic in the upper half-plane, f_- in the lower, and both
/// vanish at infinity.
class CircleSplit {
public:
    using cplx = std::complex<double>;

    CircleSplit() = default;
    CircleSplit(std::vector<cplx> coeffs, std::size_t n) : c_(std::move(coeffs)), n_(n) {
        // move f_+(infinity) over to the minus side
        shift_ = eval_plus_raw(cplx(1.0));
    }

    [[nodiscard]] cplx plus(cplx y) const { return eval_plus_raw(mobius_to_circle(y)) - shift_; }
    [[nodiscard]] cplx minus(cplx y) const { return eval_minus_raw(mobius_to_circle(y)) + shift_; }
    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] const std::vector<cplx>& coefficients() const noexcept { return c_; }

private:
    // c_ holds c_{-N/2}..c_{N/2}
    [[nodiscard]] cplx eval_plus_raw(cplx z) const {
        const std::size_t half = n_ / 2;
        const cplx w = 1.0 / z;
        cplx v(0.0);
        for (std::size_t k = half; k >= 1; --k) v = (v + c_[half - k]) * w;
        return v + 0.5 * c_[half];
    }
    [[nodiscard]] cplx eval_minus_raw(cplx z) const {
        const std::size_t half = n_ / 2;
        cplx v(0.0);
        for (std::size_t k = half; k >= 1; --k) v = (v + c_[half + k]) * z;
        return v + 0.5 * c_[half];
    }

    std::vector<cplx> c_;
    std::size_t n_ = 0;
    cplx shift_{0.0};
};

struct AdditiveSplit {
    std::vector<double> y;  // circle order (descending), infinity excluded
    std::vector<std::complex<double>> f_plus;
    std::vector<std::complex<double>> f_minus;
    CircleSplit series;
};

namespace detail {

inline CircleSplit circle_split_from_samples(const std::vector<std::complex<double>>& samples) {
    using cplx = std::complex<double>;
    const std::size_t n = samples.size();
    const auto spec = fft_forward(samples);
    const std::size_t half = n / 2;
    std::vector<cplx> c(n + 1);
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t k = 1; k < half; ++k) {
        c[half + k] = spec[k] * inv;
        c[half - k] = spec[n - k] * inv;
    }
    c[half] = spec[0] * inv;
    c[0] = c[n] = 0.5 * spec[half] * inv;

    double top = 0.0, peak = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double a = std::abs(c[k]);
        peak = std::max(peak, a);
        const std::size_t freq = k > half ? k - half : half - k;
        if (4 * freq > n) top = std::max(top, a);
    }
    if (top > 1e-10 * peak && peak > 0.0) {
        throw Error(ErrorCode::AliasingDetected,
                    "Fourier coefficients have not decayed in the top octave; raise N");
    }
    return CircleSplit(std::move(c), n);
}

// samples at z_j = exp(2 pi i j / N); j = 0 is y = infinity
template <typename F>
std::vector<std::complex<double>> circle_samples(F&& f, std::size_t n, std::complex<double> at_infinity,
                                                 std::vector<double>& y) {
    if (n < 4 || (n & (n - 1)) != 0) throw Error(ErrorCode::DomainError, "N must be a power of two");
    std::vector<std::complex<double>> s(n);
    s[0] = at_infinity;
    y.clear();
    for (std::size_t j = 1; j < n; ++j) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        // i (1 + z)/(z - 1) = cot(theta / 2)
        const double yj = 1.0 / std::tan(0.5 * theta);
        s[j] = f(yj);
        y.push_back(yj);
    }
    return s;
}

}  // namespace detail

/// Additive split of a function decaying at infinity.
template <typename F>
[[nodiscard]] AdditiveSplit additive_split_oracle(F&& f, std::size_t n) {
    AdditiveSplit out;
    auto samples = detail::circle_samples(f, n, std::complex<double>(0.0), out.y);
    out.series = detail::circle_split_from_samples(samples);
    for (double y : out.y) {
        out.f_plus.push_back(out.series.plus(y));
        out.f_minus.push_back(out.series.minus(y));
    }
    return out;
}

/// exp of the additive split of log K. Evaluators accept complex y; plus is
/// meant for Im y >= 0 and minus for Im y <= 0.
struct OracleFactors {
    std::vector<double> y;
    std::vector<std::complex<double>> k_plus;
    std::vector<std::complex<double>> k_minus;
    CircleSplit log_split;

    [[nodiscard]] std::complex<double> plus(std::complex<double> w) const { return std::exp(log_split.plus(w)); }
    [[nodiscard]] std::complex<double> minus(std::complex<double> w) const {
        return std::exp(log_split.minus(w));
    }
};

[[nodiscard]] inline OracleFactors mult_factorize_oracle(const KernelSpec& k, std::size_t n = 0) {
    using cplx = std::complex<double>;
    if (n == 0) n = k.oracle_grid;
    if (std::abs(k.value_at_infinity - cplx(1.0)) > 1e-8) {
        throw Error(ErrorCode::NonUnitLimit, "multiplicative oracle needs K -> 1 at infinity");
    }
    OracleFactors out;
    std::vector<double> y;
    auto values = detail::circle_samples([&](double t) { return k(t); }, n, cplx(1.0), y);

    // continuous log along the circle; the total turn is the winding number
    std::vector<cplx> logs(n);
    logs[0] = cplx(0.0);
    double arg = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const cplx v = values[j % n];
        if (std::abs(v) == 0.0) throw Error(ErrorCode::DomainError, "kernel vanishes on the real line");
        const double a = std::arg(v);
        double step = a - std::remainder(arg, 2.0 * std::numbers::pi);
        step = std::remainder(step, 2.0 * std::numbers::pi);
        arg += step;
        if (j < n) logs[j] = cplx(std::log(std::abs(v)), arg);
    }
    const double winding = arg / (2.0 * std::numbers::pi);
    if (std::abs(winding) > 0.5) {
        throw Error(ErrorCode::WindingNonzero, "log K is not single-valued (winding " +
                                                   std::to_string(std::lround(winding)) + ")");
    }
    out.log_split = detail::circle_split_from_samples(logs);
    out.y = std::move(y);
    for (double t : out.y) {
        out.k_plus.push_back(out.plus(t));
        out.k_minus.push_back(out.minus(t));
    }
    return out;
}

}  // namespace whfact

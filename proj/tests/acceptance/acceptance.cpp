// SPDX-License-Identifier: MIT
//
// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any
// selected criterion fails. `--criterion N` runs a single one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "whfact/whfact.hpp"

using namespace whfact;
using cplx = std::complex<double>;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

const cplx I(0.0, 1.0);

ChebSeries mapped_series(const KernelSpec& k, const RealLineMap& map) {
    TransportOptions o;
    o.value_at_infinity = k.value_at_infinity.real();
    return compute_cheb_series(transport_to_interval([&](double y) { return k(y).real(); }, map, o));
}

Outcome criterion1() {
    const auto k = example1_kernel(2.0);
    const auto a = factorize_kernel(k, RealLineMap::even(), 4, 4).report.sup_residual_grid;
    const auto b = factorize_kernel(k, RealLineMap::even(), 5, 5).report.sup_residual_grid;
    return {a <= 5e-9 && b <= 5e-12,
            "sup (4,4) = " + fmt("%.3e", a) + " <= 5e-9, sup (5,5) = " + fmt("%.3e", b) + " <= 5e-12"};
}

Outcome criterion2() {
    const auto r = factorize_kernel(example1_kernel(2.0), RealLineMap::even(), 5, 5).report;
    const double meas = r.measured_factor_error_l2.value_or(NAN);
    const double ratio = r.factor_bound_l2 / r.l2_residual;
    const bool ok = r.l2_residual >= 2e-10 && r.l2_residual <= 5e-9 && meas >= 2e-10 && meas <= 5e-9 &&
                    meas <= r.factor_bound_l2 && ratio <= 2.2;
    return {ok, "l2_residual = " + fmt("%.3e", r.l2_residual) + " in [2e-10, 5e-9], measured = " +
                    fmt("%.3e", meas) + " in [2e-10, 5e-9], bound = " + fmt("%.3e", r.factor_bound_l2) +
                    ", bound/residual = " + fmt("%.3f", ratio) + " <= 2.2"};
}

double distance_to_segments(cplx z) {
    // segments [i, 2i] and [-2i, -i]
    double best = INFINITY;
    for (double sgn : {1.0, -1.0}) {
        const double t = std::clamp(sgn * z.imag(), 1.0, 2.0);
        best = std::min(best, std::abs(z - cplx(0.0, sgn * t)));
    }
    return best;
}

Outcome criterion3() {
    const auto f = factorize_kernel(example1_kernel(2.0), RealLineMap::even(), 5, 5);
    double worst = 0.0;
    for (const auto& z : f.approximant.zeros()) worst = std::max(worst, distance_to_segments(z));
    for (const auto& p : f.approximant.poles()) worst = std::max(worst, distance_to_segments(p));
    const bool counts = f.approximant.zeros().size() == 10 && f.approximant.poles().size() == 10;
    return {counts && worst <= 1e-5, "[10,10] approximant: " + std::string(counts ? "10/10" : "wrong") +
                                         " zeros/poles, max distance to segments = " + fmt("%.3e", worst) +
                                         " <= 1e-5"};
}

Outcome criterion4() {
    const auto st = approximate_kernel(example2_kernel(), RealLineMap::general(), 12, 12);
    const auto k = example2_kernel();
    double sup = 0.0;
    for (double y : working_grid(RealLineMap::general(), 10000)) sup = std::max(sup, std::abs(k(y) - st.rk(cplx(y))));
    return {sup <= 1e-7, "sup (12,12) = " + fmt("%.3e", sup) + " <= 1e-7"};
}

Outcome criterion5() {
    const auto k = example1_kernel(2.0);
    const auto o = mult_factorize_oracle(k, 4096);
    double sup = 0.0;
    for (std::size_t j = 0; j < o.y.size(); ++j) {
        sup = std::max(sup, std::abs(o.k_plus[j] - k.exact_factors->plus(o.y[j])));
        sup = std::max(sup, std::abs(o.k_minus[j] - k.exact_factors->minus(o.y[j])));
    }
    PipelineOptions opts;
    const auto f = factorize_kernel(k, RealLineMap::even(), 5, 5, opts);
    LpOptions lp = opts.lp;
    lp.abs_tol = std::max(opts.lp_abs_fraction * f.report.cf_predicted, opts.lp_abs_floor);
    const double dp = lp_norm([&](double y) { return o.plus(cplx(y)) - f.factors.plus(cplx(y)); }, 2.0, lp);
    const double dm = lp_norm([&](double y) { return o.minus(cplx(y)) - f.factors.minus(cplx(y)); }, 2.0, lp);
    const double d = std::max(dp, dm);
    return {sup <= 1e-9 && d <= f.report.factor_bound_l2,
            "oracle vs closed form sup = " + fmt("%.3e", sup) + " <= 1e-9, pipeline vs oracle L2 = " +
                fmt("%.3e", d) + " <= bound " + fmt("%.3e", f.report.factor_bound_l2)};
}

Outcome criterion6() {
    bool ok = hilbert_constant(2.0) == 1.0;
    double worst_sym = 0.0;
    for (double p : {1.25, 1.5, 3.0, 4.0, 8.0}) {
        worst_sym = std::max(worst_sym, std::abs(hilbert_constant(p) - hilbert_constant(p / (p - 1.0))));
    }
    ok = ok && worst_sym <= 1e-12;
    // reference values evaluated in 30-digit arithmetic
    struct Case {
        double got, want;
    };
    const Case cases[] = {
        {additive_bound(2.0, 4.0), 3.41421356237309504880},
        {additive_bound(0.1, 1.5), 0.136602540378443864676},
        {multiplicative_bound(1e-6, 2.0, 0.5, 1.0, true).factor_bound, 2.00000500000975001962e-6},
        {multiplicative_bound(1e-6, 2.0, 0.5, 1.0, false).factor_bound, 9.62097881436451038657e-6},
        {multiplicative_bound(1e-3, 4.0, 0.25, 3.0, true).factor_bound, 0.0118766603902832507777},
        {multiplicative_bound(1e-3, 3.0, 0.25, 3.0, false).factor_bound, 0.144370017560963403897},
    };
    double worst = 0.0;
    for (const auto& c : cases) worst = std::max(worst, std::abs(c.got - c.want) / c.want);
    ok = ok && worst <= 1e-12;
    return {ok, "c(2) = " + fmt("%.17g", hilbert_constant(2.0)) + ", symmetry error = " + fmt("%.1e", worst_sym) +
                    ", max relative formula error = " + fmt("%.1e", worst)};
}

Outcome criterion7() {
    std::mt19937_64 rng(20240601);
    std::string detail;
    bool ok = true;

    // rational splitting
    double split_err = 0.0;
    {
        std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.2, 3.0), yd(-50.0, 50.0);
        std::uniform_int_distribution<int> deg(1, 6);
        for (int t = 0; t < 50; ++t) {
            std::vector<cplx> zeros, poles;
            const int d = deg(rng);
            for (int i = 0; i < d; ++i) {
                const double s = (i % 2 == 0) ? 1.0 : -1.0;
                zeros.emplace_back(re(rng), s * im(rng));
                poles.emplace_back(re(rng), s * im(rng));
            }
            const RationalFunction k(zeros, poles, 1.0);
            const auto s = wh_split(k);
            for (int i = 0; i < 100; ++i) {
                const double y = yd(rng);
                const cplx v = k(y);
                split_err = std::max(split_err, std::abs(s.plus(y) * s.minus(y) - v) / std::abs(v));
            }
        }
    }
    ok = ok && split_err <= 1e-10;
    detail += "split " + fmt("%.1e", split_err);

    // CF predicted vs measured
    double worst_ratio = 1.0;
    std::string worst_case;
    for (const auto& [k, map] : {std::pair{example1_kernel(2.0), RealLineMap::even()},
                                 std::pair{example2_kernel(), RealLineMap::general()}}) {
        const auto s = mapped_series(k, map);
        for (std::size_t n : {3u, 4u, 5u}) {
            const auto r = cf_approx(s, n, n);
            double sup = 0.0;
            for (std::size_t j = 0; j < 10000; ++j) {
                const double x = std::cos(std::numbers::pi * (j + 0.5) / 10000.0);
                sup = std::max(sup, std::abs(eval_cheb(s, x) - r(x)));
            }
            const double q = std::max(sup / r.predicted_error, r.predicted_error / sup);
            if (q > worst_ratio) {
                worst_ratio = q;
                worst_case = k.name + " (" + std::to_string(n) + "," + std::to_string(n) + ")";
            }
        }
    }
    ok = ok && worst_ratio <= 3.0;
    detail += ", CF ratio " + fmt("%.3f", worst_ratio) + " at " + worst_case;

    // AAK
    double aak_norm_err = 0.0;
    bool monotone = true;
    {
        std::normal_distribution<double> g;
        for (int t = 0; t < 20; ++t) {
            const std::size_t half = 10;
            std::vector<cplx> c(2 * half + 1);
            for (std::size_t k = 0; k < c.size(); ++k) {
                const double decay = std::pow(0.6, std::abs(static_cast<double>(k) - static_cast<double>(half)));
                c[k] = decay * cplx(g(rng), g(rng));
            }
            const auto h = static_cast<Eigen::Index>(half);
            Eigen::MatrixXcd hm = Eigen::MatrixXcd::Zero(h, h);
            for (Eigen::Index i = 0; i < h; ++i)
                for (Eigen::Index j = 0; i + j + 1 <= h; ++j) hm(i, j) = c[half - static_cast<std::size_t>(i + j + 1)];
            Eigen::VectorXcd v = Eigen::VectorXcd::Ones(h);
            double sigma = 0.0;
            for (int it = 0; it < 2000; ++it) {
                Eigen::VectorXcd w = hm.adjoint() * (hm * v);
                sigma = std::sqrt(w.norm() / v.norm());
                v = w / w.norm();
            }
            double prev = aak_approx(c, 0).distance;
            aak_norm_err = std::max(aak_norm_err, std::abs(prev - sigma) / sigma);
            for (std::size_t n = 1; n < 8; ++n) {
                const double d = aak_approx(c, n).distance;
                monotone = monotone && d <= prev * (1.0 + 1e-14);
                prev = d;
            }
        }
    }
    ok = ok && aak_norm_err <= 1e-10 && monotone;
    detail += ", AAK norm " + fmt("%.1e", aak_norm_err) + (monotone ? " monotone" : " NOT monotone");

    // rational Chebyshev orthogonality
    double orth = 0.0;
    {
        boost::math::quadrature::tanh_sinh<double> ts;
        for (int n = 0; n <= 8; ++n) {
            for (int m = 0; m <= 8; ++m) {
                auto gfun = [&](double x, double xc) {
                    const double s = x < 0 ? (1.0 - x) * -xc : (1.0 + x) * xc;
                    const double y = x / std::sqrt(s);
                    return rational_chebyshev(n, y) * rational_chebyshev(m, y) / std::sqrt(s);
                };
                const double v = ts.integrate(gfun, -1.0, 1.0);
                const double want = n != m ? 0.0 : (n == 0 ? std::numbers::pi : std::numbers::pi / 2);
                orth = std::max(orth, std::abs(v - want));
            }
        }
    }
    ok = ok && orth < 1e-10;
    detail += ", TB orthogonality " + fmt("%.1e", orth);

    const double lp = lp_norm([](double y) { return 1.0 / (1.0 + y * y); }, 2.0);
    const double lp_err = std::abs(lp - std::sqrt(std::numbers::pi / 2.0));
    ok = ok && lp_err <= 1e-10;
    detail += ", lp_norm " + fmt("%.1e", lp_err);
    return {ok, detail};
}

Outcome criterion8() {
    const auto t = compare_truncation(example1_kernel(2.0), -20.0, 20.0, 20, 4);
    return {t.sup_out >= 10.0 * t.sup_in,
            "sup in = " + fmt("%.3e", t.sup_in) + ", sup out = " + fmt("%.3e", t.sup_out) + ", ratio = " +
                fmt("%.3e", t.sup_out / t.sup_in) + " >= 10"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> all = {criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8};
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    if (only < 0 || only > static_cast<int>(all.size())) {
        std::fprintf(stderr, "criterion must be between 1 and %zu\n", all.size());
        return 2;
    }
    int failures = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (only != 0 && static_cast<int>(i) + 1 != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = all[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %zu: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}

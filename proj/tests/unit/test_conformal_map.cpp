// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "whfact/cf.hpp"
#include "whfact/conformal_map.hpp"
#include "whfact/kernels.hpp"
#include "whfact/pullback.hpp"

using namespace whfact;
using cplx = std::complex<double>;

TEST(ConformalMap, ForwardInverseRoundTrip) {
    for (const auto& m : {RealLineMap::even(1.5, 0.0), RealLineMap::general(2.0, -0.5),
                          RealLineMap::truncation(-20, 20)}) {
        for (int j = 1; j < 1000; ++j) {
            const double x = -1.0 + 2.0 * j / 1000.0;
            const double y = map_inverse(m, x);
            EXPECT_NEAR(map_forward(m, y), x, 1e-12);
        }
    }
}

TEST(ConformalMap, EndpointsAndInfinity) {
    const auto e = RealLineMap::even();
    EXPECT_EQ(map_forward(e, INFINITY), 1.0);
    EXPECT_EQ(map_forward(e, 0.0), -1.0);
    const auto g = RealLineMap::general();
    EXPECT_EQ(map_forward(g, -INFINITY), -1.0);
    EXPECT_EQ(map_forward(g, 0.0), 0.0);
    EXPECT_THROW((void)map_inverse(g, 1.0), Error);
    EXPECT_THROW((void)RealLineMap::truncation(1.0, 1.0), Error);
}

TEST(ConformalMap, MobiusSendsUpperHalfPlaneOutside) {
    EXPECT_NEAR(std::abs(mobius_to_circle(cplx(0.0, 2.0))), 3.0, 1e-14);
    EXPECT_LT(std::abs(mobius_to_circle(cplx(0.0, -0.5))), 1.0);
    EXPECT_NEAR(std::abs(mobius_to_circle(cplx(3.7, 0.0))), 1.0, 1e-15);
    const cplx y(0.3, -1.2);
    EXPECT_NEAR(std::abs(mobius_from_circle(mobius_to_circle(y)) - y), 0.0, 1e-14);
}

TEST(ConformalMap, TransportUsesDeclaredLimit) {
    const auto k = example1_kernel(2.0);
    TransportOptions o;
    o.value_at_infinity = 1.0;
    auto f = transport_to_interval([&](double y) { return k(y).real(); }, RealLineMap::even(), o);
    EXPECT_DOUBLE_EQ(f(1.0), 1.0);
    EXPECT_DOUBLE_EQ(f(-1.0), 0.5);
    // f(x) = sqrt(2 / (5 - 3x)) under the even map
    EXPECT_NEAR(f(0.2), std::sqrt(2.0 / (5.0 - 0.6)), 1e-15);
}

TEST(ConformalMap, EvenMapRejectsOddFunction) {
    try {
        (void)transport_to_interval([](double y) { return y; }, RealLineMap::even());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotEven);
    }
}

TEST(ConformalMap, RationalChebyshevOrthogonality) {
    // int TB_n TB_m / (1 + y^2) dy = int T_n T_m / sqrt(1 - x^2) dx with y = x / sqrt(1 - x^2)
    boost::math::quadrature::tanh_sinh<double> ts;
    for (int n = 0; n <= 8; ++n) {
        for (int m = 0; m <= 8; ++m) {
            // xc is the signed distance to the nearer endpoint, so 1 - x^2 keeps full precision
            auto g = [&](double x, double xc) {
                const double s = x < 0 ? (1.0 - x) * -xc : (1.0 + x) * xc;
                const double y = x / std::sqrt(s);
                return rational_chebyshev(n, y) * rational_chebyshev(m, y) / std::sqrt(s);
            };
            const double v = ts.integrate(g, -1.0, 1.0);
            const double expect = n != m ? 0.0 : (n == 0 ? std::numbers::pi : std::numbers::pi / 2);
            EXPECT_NEAR(v, expect, 1e-10) << n << "," << m;
        }
    }
}

TEST(PullBack, IdentityUnderEvenMap) {
    ChebRational r{{0.0, 1.0}, {1.0}};
    const auto ry = pull_back_rational(r, RealLineMap::even());
    ASSERT_EQ(ry.zeros().size(), 2u);
    ASSERT_EQ(ry.poles().size(), 2u);
    // (y^2 - 1)/(y^2 + 1)
    EXPECT_NEAR(std::abs(ry.zeros()[0] - cplx(-1, 0)), 0, 1e-14);
    EXPECT_NEAR(std::abs(ry.zeros()[1] - cplx(1, 0)), 0, 1e-14);
    EXPECT_NEAR(std::abs(ry.poles()[0] - cplx(0, -1)), 0, 1e-14);
    EXPECT_NEAR(std::abs(ry.poles()[1] - cplx(0, 1)), 0, 1e-14);
    EXPECT_NEAR(std::abs(ry.gain() - 1.0), 0, 1e-14);
}

TEST(PullBack, SquareUnderGeneralMap) {
    // x^2 = (T_0 + T_2) / 2 -> y^2 / (y^2 + 1)
    ChebRational r{{0.5, 0.0, 0.5}, {1.0}};
    const auto ry = pull_back_rational(r, RealLineMap::general());
    for (double y : {-3.0, -0.4, 0.0, 0.9, 12.0}) {
        EXPECT_NEAR(std::abs(ry(cplx(y)) - y * y / (y * y + 1)), 0.0, 1e-14);
    }
}

TEST(PullBack, GeneralMapRejectsOddApproximant) {
    ChebRational r{{0.0, 1.0}, {1.0}};
    try {
        (void)pull_back_rational(r, RealLineMap::general());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotEvenApproximant);
    }
}

TEST(PullBack, AgreesWithCompositeEvaluation) {
    std::mt19937_64 rng(7);
    ChebRational r{{0.7, -0.2, 0.1, 0.03}, {2.0, 0.3, -0.4}};
    for (const auto& m : {RealLineMap::even(1.3, 0.4), RealLineMap::truncation(-3.0, 5.0)}) {
        const auto ry = pull_back_rational(r, m);
        std::uniform_real_distribution<double> uy(-20.0, 20.0);
        for (int i = 0; i < 100; ++i) {
            const double y = uy(rng);
            const double direct = r(map_forward(m, y));
            EXPECT_NEAR(ry(cplx(y)).real(), direct, 1e-11 * std::max(1.0, std::abs(direct)));
            EXPECT_NEAR(ry(cplx(y)).imag(), 0.0, 1e-11 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST(PullBack, DegreeAccountingForEvenMap) {
    ChebRational r{{1.0, 0.2, 0.1}, {3.0, -0.5, 0.25}};
    const auto ry = pull_back_rational(r, RealLineMap::even());
    EXPECT_EQ(ry.zeros().size(), 4u);
    EXPECT_EQ(ry.poles().size(), 4u);
}

TEST(ConformalMap, WorkingGridSize) {
    EXPECT_EQ(working_grid(RealLineMap::even(), 10000).size(), 10000u);
    auto g = working_grid(RealLineMap::general(), 100);
    EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
}

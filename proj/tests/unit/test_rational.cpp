// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "whfact/rational.hpp"

using namespace whfact;

namespace {

const cplx I(0.0, 1.0);

bool contains(const std::vector<cplx>& v, cplx x, double tol = 1e-12) {
    for (const auto& a : v) if (std::abs(a - x) <= tol) return true;
    return false;
}

}  // namespace

TEST(Rational, FromPolyCoeffs) {
    const std::vector<double> num = {1.0, 0.0, 1.0}, den = {4.0, 0.0, 1.0};
    const auto r = from_poly_coeffs(std::span<const double>(num), std::span<const double>(den));
    ASSERT_EQ(r.zeros().size(), 2u);
    ASSERT_EQ(r.poles().size(), 2u);
    EXPECT_TRUE(contains(r.zeros(), I));
    EXPECT_TRUE(contains(r.zeros(), -I));
    EXPECT_TRUE(contains(r.poles(), 2.0 * I));
    EXPECT_TRUE(contains(r.poles(), -2.0 * I));
    EXPECT_NEAR(std::abs(r.gain() - 1.0), 0.0, 1e-15);
    const std::vector<double> zero = {0.0};
    EXPECT_THROW((void)from_poly_coeffs(std::span<const double>(num), std::span<const double>(zero)), Error);
}

TEST(Rational, DegreeSixRoundTrip) {
    const std::vector<cplx> roots = {{-1.5, 0.2}, {0.3, -2.0}, {0.7, 0.7}, {2.5, 0.0}, {-0.2, -0.4}, {1.1, 3.0}};
    std::vector<cplx> c = {cplx(1.0)};
    for (const auto& z : roots) {
        std::vector<cplx> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) next[k] -= z * c[k], next[k + 1] += c[k];
        c = next;
    }
    const std::vector<cplx> one = {cplx(1.0)};
    const auto r = from_poly_coeffs(std::span<const cplx>(c), std::span<const cplx>(one));
    for (const auto& z : roots) EXPECT_TRUE(contains(r.zeros(), z, 1e-10)) << z;
}

TEST(Rational, Evaluation) {
    RationalFunction r({I}, {2.0 * I}, 1.0);
    EXPECT_NEAR(std::abs(r(0.0) - 0.5), 0.0, 1e-15);
    EXPECT_EQ(RationalFunction(1.0)(cplx(3.0, -2.0)), cplx(1.0));
    EXPECT_THROW((void)r(2.0 * I), Error);
    // the modulus of the true value squared is sqrt(2/5)
    const cplx v = std::sqrt((1.0 + I) / (1.0 + 2.0 * I));
    EXPECT_NEAR(v.real(), 0.7850017617921873, 1e-15);
    EXPECT_NEAR(v.imag(), -0.12738824913169164, 1e-15);
    EXPECT_NEAR(std::norm(v), std::sqrt(0.4), 1e-15);
}

TEST(Rational, CancelsCoincidentPairs) {
    RationalFunction r({I, 3.0}, {I, -2.0 * I}, 2.0);
    EXPECT_EQ(r.zeros().size(), 1u);
    EXPECT_EQ(r.poles().size(), 1u);
}

TEST(WHSplit, SimpleQuadraticRatio) {
    const RationalFunction k({I, -I}, {2.0 * I, -2.0 * I}, 1.0);
    const auto s = wh_split(k);
    EXPECT_TRUE(s.index_balanced);
    for (double y : {-2.0, 0.0, 0.5, 7.0}) {
        EXPECT_NEAR(std::abs(s.plus(y) - (y + I) / (y + 2.0 * I)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(s.minus(y) - (y - I) / (y - 2.0 * I)), 0.0, 1e-15);
    }
    const auto one = wh_split(RationalFunction(1.0));
    EXPECT_EQ(one.plus(0.3), cplx(1.0));
    EXPECT_EQ(one.minus(0.3), cplx(1.0));
}

TEST(WHSplit, RandomIndexZeroRationals) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.2, 3.0), yd(-50.0, 50.0);
    std::uniform_int_distribution<int> deg(1, 5);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = deg(rng);
        std::vector<cplx> zeros, poles;
        for (int i = 0; i < d; ++i) {
            const double s1 = (i % 2 == 0) ? 1.0 : -1.0;
            zeros.emplace_back(re(rng), s1 * im(rng));
            poles.emplace_back(re(rng), s1 * im(rng));
        }
        const RationalFunction k(zeros, poles, 1.0);
        const auto s = wh_split(k);
        ASSERT_TRUE(s.index_balanced);
        for (const auto& z : s.plus.zeros()) EXPECT_LT(z.imag(), 0.0);
        for (const auto& p : s.plus.poles()) EXPECT_LT(p.imag(), 0.0);
        for (const auto& z : s.minus.zeros()) EXPECT_GT(z.imag(), 0.0);
        for (const auto& p : s.minus.poles()) EXPECT_GT(p.imag(), 0.0);
        for (int i = 0; i < 100; ++i) {
            const double y = yd(rng);
            const cplx kv = k(y);
            EXPECT_NEAR(std::abs(s.plus(y) * s.minus(y) - kv), 0.0, 1e-10 * std::max(1.0, std::abs(kv)));
        }
        const double big = 1e9;
        EXPECT_NEAR(std::abs(s.plus(big * I) * s.minus(-big * I) - 1.0), 0.0, 1e-7);
    }
}

TEST(WHSplit, EvenRealKernelHasMirroredFactors) {
    const RationalFunction k({I, -I, 0.5 + 3.0 * I, -0.5 + 3.0 * I, 0.5 - 3.0 * I, -0.5 - 3.0 * I},
                             {2.0 * I, -2.0 * I, 1.0 + I, -1.0 + I, 1.0 - I, -1.0 - I}, 1.0);
    const auto s = wh_split(k);
    for (double y : {0.1, 1.7, -4.0}) {
        EXPECT_NEAR(std::abs(s.plus(y) - s.minus(-y)), 0.0, 1e-13);
    }
}

TEST(WHSplit, RootOnContourAndNonUnitLimit) {
    try {
        (void)wh_split(RationalFunction({cplx(1.0, 1e-12)}, {I}, 1.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RootOnContour);
    }
    try {
        (void)wh_split(RationalFunction({I}, {2.0 * I}, 3.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonUnitLimit);
    }
}

TEST(WHSplit, NonzeroIndexIsFlagged) {
    const auto s = wh_split(RationalFunction({-I, -2.0 * I}, {-3.0 * I}, 1.0));
    EXPECT_FALSE(s.index_balanced);
    EXPECT_EQ(s.index, 1);
}

TEST(SqrtFactor, Example1) {
    const RationalFunction k({I, -I}, {2.0 * I, -2.0 * I}, 1.0);
    const auto s = sqrt_factor(k);
    for (double y : {-3.0, 0.0, 1.0, 25.0}) {
        EXPECT_NEAR(std::abs(s.plus(y) - std::sqrt((y + I) / (y + 2.0 * I))), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(s.minus(y) - std::sqrt((y - I) / (y - 2.0 * I))), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(s.plus(y) * s.minus(y) - std::sqrt((y * y + 1) / (y * y + 4))), 0.0, 1e-15);
    }
    const cplx v = s.plus(1.0);
    EXPECT_NEAR(v.real(), 0.7850017617921873, 1e-15);
    EXPECT_NEAR(v.imag(), -0.12738824913169164, 1e-15);
    const auto one = sqrt_factor(RationalFunction(1.0));
    EXPECT_EQ(one.plus(2.0), cplx(1.0));
}

TEST(SqrtFactor, RejectsAsymmetricRoots) {
    EXPECT_THROW((void)sqrt_factor(RationalFunction({I}, {2.0 * I}, 1.0)), Error);
}

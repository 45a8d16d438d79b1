#include <gtest/gtest.h>

#include <random>

#include "gegen/numeric_core.hpp"
#include "test_util.hpp"

using namespace gegen;

TEST(Gamma, SmallIntegersAndHalf) {
    EXPECT_REL(gamma_fn(1.0), cplx(1.0), 1e-15);
    EXPECT_REL(gamma_fn(0.5), cplx(std::sqrt(pi)), 1e-15);
    EXPECT_REL(gamma_fn(5.0), cplx(24.0), 1e-15);
}

TEST(Gamma, ComplexAndNegativeArguments) {
    // mpmath, 40 digits
    EXPECT_REL(gamma_fn({0.3, 0.4}), cplx(0.91156152780458583312, -1.3671933575854186231), 1e-13);
    EXPECT_REL(gamma_fn(-2.5), cplx(-0.94530872048294188123), 1e-13);
    EXPECT_REL(gamma_fn({-7.3, 2.0}), cplx(7.6442251755015562796e-8, -1.6268991854713860884e-6), 1e-12);
    EXPECT_REL(gamma_fn(150.25), cplx(1.3321507761951634843e+261), 1e-12);
}

TEST(Gamma, PolesThrow) {
    EXPECT_THROW(gamma_fn(0.0), pole_error);
    EXPECT_THROW(gamma_fn(-3.0), pole_error);
    EXPECT_EQ(rgamma(-4.0), cplx(0.0));
}

TEST(Gamma, ReflectionIdentity) {
    for (double re = -4.75; re <= 5.0; re += 0.5) {
        for (double im : {0.0, 0.3, -1.2, 2.5}) {
            const cplx w{re + 0.1, im};
            const cplx lhs = gamma_fn(w) * gamma_fn(1.0 - w);
            const cplx rhs = pi / std::sin(pi * w);
            EXPECT_REL(lhs, rhs, 1e-10) << "w = " << w;
        }
    }
}

TEST(GammaRatio, Examples) {
    EXPECT_REL(gamma_ratio(6.0, 4.0), cplx(20.0), 1e-15);
    EXPECT_REL(gamma_ratio({3.7, -1.1}, {3.7, -1.1}), cplx(1.0), 0.0);
    // (lambda + alpha)^{2 alpha - 1} (1 + O(1/lambda^2)) at lambda = 100, alpha = 3/2
    const cplx r = gamma_ratio(103.0, 101.0);
    EXPECT_REL(r, cplx(10302.0), 1e-15);
    EXPECT_LE(std::abs(r / std::pow(101.5, 2.0) - 1.0), 1.0 / (100.0 * 100.0));
}

TEST(GammaRatio, LargeArguments) {
    EXPECT_REL(gamma_ratio({1000.0, 5.0}, {990.0, 2.0}), cplx(-2.959419092694525234e+29, 8.8843855249209585176e+29), 1e-12);
    EXPECT_REL(gamma_ratio(9000.5, 9000.25), cplx(9.7400036456766132658), 1e-12);
}

TEST(GammaRatio, PoleLimits) {
    // Gamma(-3+e)/Gamma(-5+e) -> 5!/3!
    EXPECT_REL(gamma_ratio(-3.0, -5.0), cplx(20.0), 1e-14);
    EXPECT_REL(gamma_ratio(-2.0, -3.0), cplx(-3.0), 1e-14);
    EXPECT_THROW(gamma_ratio(-2.0, 1.5), pole_error);
    EXPECT_THROW(gamma_ratio(1.5, 0.0), pole_error);
}

TEST(Branch, SqrtExamples) {
    EXPECT_REL(sqrt_zsq_minus_1(BranchedPoint::off(1.25)), cplx(0.75), 1e-15);
    EXPECT_REL(sqrt_zsq_minus_1(BranchedPoint::above(0.0)), cplx(0.0, 1.0), 1e-15);
    EXPECT_REL(sqrt_zsq_minus_1(BranchedPoint::below(0.0)), cplx(0.0, -1.0), 1e-15);
    EXPECT_THROW(sqrt_zsq_minus_1(BranchedPoint::off(0.3)), branch_error);
    EXPECT_THROW(sqrt_zsq_minus_1(BranchedPoint{{0.3, 0.1}, Side::Above}), branch_error);
}

TEST(Branch, SqrtLargeRealLimit) {
    for (double x : {2.0, 10.0, 1e3, 1e6}) EXPECT_GT(sqrt_zsq_minus_1(BranchedPoint::off(x)).real(), 0.0);
    // Negative real axis from either side
    EXPECT_REL(sqrt_zsq_minus_1(BranchedPoint::above(-2.0)), cplx(-std::sqrt(3.0), 0.0), 1e-15);
    EXPECT_REL(sqrt_zsq_minus_1(BranchedPoint::below(-2.0)), cplx(-std::sqrt(3.0), 0.0), 1e-15);
}

TEST(Branch, ZPlusMinusExamples) {
    const ZPair a = z_plus_minus(BranchedPoint::off(1.25));
    EXPECT_REL(a.z_plus, cplx(2.0), 1e-15);
    EXPECT_REL(a.z_minus, cplx(0.5), 1e-15);
    const double theta = 1.1;
    const ZPair b = z_plus_minus(BranchedPoint::above(std::cos(theta)));
    EXPECT_REL(b.z_plus, std::polar(1.0, theta), 1e-15);
    EXPECT_REL(b.z_minus, std::polar(1.0, -theta), 1e-15);
    const ZPair c = z_plus_minus(BranchedPoint::off(1.0));
    EXPECT_TRUE(c.degenerate);
    EXPECT_EQ(c.z_plus, cplx(1.0));
    EXPECT_EQ(c.z_minus, cplx(1.0));
    EXPECT_TRUE(z_plus_minus(BranchedPoint::off({-1.0, 1e-13})).degenerate);
}

TEST(Branch, RandomGridProductAndModulus) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(-6.0, 6.0);
    std::uniform_real_distribution<double> im(-6.0, 6.0);
    const double ulp = std::numeric_limits<double>::epsilon();
    for (int k = 0; k < 1000; ++k) {
        cplx z{re(rng), im(rng)};
        if (z.imag() == 0.0) continue;
        const ZPair zp = z_plus_minus(BranchedPoint::off(z));
        EXPECT_LE(std::abs(zp.z_plus * zp.z_minus - 1.0), 10 * ulp) << z;
        EXPECT_GT(std::abs(zp.z_plus), 1.0) << z;
    }
}

TEST(Branch, ContinuityAcrossRightHalfLine) {
    for (double x = 1.05; x <= 10.0; x += 0.35) {
        const cplx up = z_plus_minus(BranchedPoint::off({x, 1e-12})).z_plus;
        const cplx dn = z_plus_minus(BranchedPoint::off({x, -1e-12})).z_plus;
        EXPECT_LE(std::abs(up - dn), 1e-8) << x;
        EXPECT_REL(up, z_plus_minus(BranchedPoint::off(x)).z_plus, 1e-8);
    }
}

TEST(Branch, JumpAcrossSegment) {
    for (double x = -0.95; x < 0.96; x += 0.1) {
        const cplx a = z_plus_minus(BranchedPoint::above(x)).z_plus;
        const cplx b = z_plus_minus(BranchedPoint::below(x)).z_plus;
        EXPECT_REL(a, std::conj(b), 1e-15);
        EXPECT_NEAR(std::abs(a), 1.0, 1e-15);
        // The side values are the limits from the half-planes.
        EXPECT_LE(std::abs(a - z_plus_minus(BranchedPoint::off({x, 1e-13})).z_plus), 1e-8);
    }
}

TEST(Branch, PowerOfZsqMinus1FollowsSide) {
    const double x = 0.6;
    const cplx_ld up = pow_zsq_minus_1(BranchedPoint::above(x), 0.5L);
    const cplx_ld dn = pow_zsq_minus_1(BranchedPoint::below(x), 0.5L);
    EXPECT_NEAR(static_cast<double>(up.imag()), 0.8, 1e-15);
    EXPECT_NEAR(static_cast<double>(dn.imag()), -0.8, 1e-15);
}

TEST(RemovableLimit, RecoversSmoothFunctionAcrossPole) {
    // sin(x - 2) / (x - 2) near 2
    auto f = [](cplx_ld x) { return std::sin(x - 2.0L) / (x - 2.0L); };
    for (long double t : {0.0L, 3e-6L, -7e-6L}) {
        const cplx_ld got = detail::removable_limit(cplx_ld{2.0L + t, 0.0L}, 2.0L, 1e-5L, f);
        const long double want = t == 0.0L ? 1.0L : std::sin(t) / t;
        EXPECT_NEAR(static_cast<double>(got.real()), static_cast<double>(want), 1e-14);
    }
}

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "dephase/special.hpp"

using namespace dephase::special;
using C = std::complex<double>;

namespace {
constexpr double euler_gamma = 0.57721566490153286061;
constexpr double zeta3 = 1.2020569031595942854;
} // namespace

TEST(Special, LogGammaMatchesRealLgamma) {
    for (double x : {0.1, 0.5, 1.0, 2.5, 7.3, 25.0, 120.0}) {
        EXPECT_NEAR(log_gamma(C(x, 0.0)).real(), std::lgamma(x), 1e-13 * std::max(1.0, std::abs(std::lgamma(x))));
    }
}

TEST(Special, ComplexGammaRecurrence) {
    for (C z : {C(0.3, 0.7), C(2.5, -1.2), C(-1.7, 0.4), C(5.0, 3.0)}) {
        const C lhs = gamma(z + 1.0);
        const C rhs = z * gamma(z);
        EXPECT_NEAR(std::abs(lhs - rhs) / std::abs(rhs), 0.0, 1e-13);
    }
}

TEST(Special, ReflectionFormula) {
    for (C z : {C(0.25, 0.5), C(0.8, -2.0), C(-0.3, 1.1)}) {
        const C lhs = gamma(z) * gamma(1.0 - z);
        const C rhs = std::numbers::pi / std::sin(std::numbers::pi * z);
        EXPECT_NEAR(std::abs(lhs - rhs) / std::abs(rhs), 0.0, 1e-13);
    }
}

TEST(Special, GammaOnCriticalLineModulus) {
    // |Gamma(1/2 + i y)|^2 = pi / cosh(pi y)
    for (double y : {0.0, 0.5, 2.0, 6.0}) {
        const double m2 = std::norm(gamma(C(0.5, y)));
        EXPECT_NEAR(m2 / (std::numbers::pi / std::cosh(std::numbers::pi * y)), 1.0, 1e-13);
    }
}

TEST(Special, PolygammaKnownValues) {
    EXPECT_NEAR(digamma(1.0), -euler_gamma, 1e-14);
    EXPECT_NEAR(digamma(0.5), -euler_gamma - 2.0 * std::log(2.0), 1e-14);
    EXPECT_NEAR(polygamma(1, 1.0), std::numbers::pi * std::numbers::pi / 6.0, 1e-14);
    EXPECT_NEAR(polygamma(2, 1.0), -2.0 * zeta3, 1e-13);
    EXPECT_NEAR(polygamma(3, 1.0), std::pow(std::numbers::pi, 4) / 15.0, 1e-12);
}

TEST(Special, ComplexDigammaRecurrence) {
    for (C z : {C(0.2, 0.3), C(-2.5, 1.0), C(3.0, -4.0)}) {
        const C diff = digamma(z + 1.0) - digamma(z) - 1.0 / z;
        EXPECT_LT(std::abs(diff), 1e-13);
    }
}

TEST(Special, GammaDerivativesMatchFiniteDifferences) {
    const double x = 2.7, h = 1e-3;
    const auto d = gamma_derivatives(x, 2);
    const double fd1 = (std::tgamma(x + h) - std::tgamma(x - h)) / (2 * h);
    const double fd2 = (std::tgamma(x + h) - 2 * std::tgamma(x) + std::tgamma(x - h)) / (h * h);
    EXPECT_NEAR(d[0], std::tgamma(x), 1e-14);
    EXPECT_NEAR(d[1], fd1, 1e-6);
    EXPECT_NEAR(d[2], fd2, 1e-5);
}

TEST(Special, GammaDerivativesAtNegativeArgument) {
    const double x = -0.5, h = 1e-4;
    const auto d = gamma_derivatives(x, 1);
    EXPECT_NEAR(d[1], (std::tgamma(x + h) - std::tgamma(x - h)) / (2 * h), 1e-6);
}

TEST(Special, BellPolynomialsLowOrders) {
    const std::vector<double> d = {0.7, -1.3, 2.1};
    const auto y = bell_polynomials(d);
    EXPECT_DOUBLE_EQ(y[0], 1.0);
    EXPECT_DOUBLE_EQ(y[1], 0.7);
    EXPECT_NEAR(y[2], 0.7 * 0.7 - 1.3, 1e-15);
    EXPECT_NEAR(y[3], std::pow(0.7, 3) + 3 * 0.7 * -1.3 + 2.1, 1e-14);
}

TEST(Special, HalfPiTrigIsExactAtIntegers) {
    for (int k = -8; k <= 8; ++k) {
        const double s = sin_half_pi(k), c = cos_half_pi(k);
        EXPECT_TRUE(s == 0.0 || s == 1.0 || s == -1.0);
        EXPECT_TRUE(c == 0.0 || c == 1.0 || c == -1.0);
        EXPECT_EQ(s * s + c * c, 1.0);
    }
    EXPECT_NEAR(sin_half_pi(2.5), std::sin(1.25 * std::numbers::pi), 1e-15);
}

TEST(Special, GeneralisedBinomial) {
    EXPECT_DOUBLE_EQ(binomial(2.5, 2), 1.875);
    EXPECT_DOUBLE_EQ(binomial(4.0, 2), 6.0);
    EXPECT_DOUBLE_EQ(binomial(2.0, 3), 0.0);
    EXPECT_DOUBLE_EQ(binomial(-1.5, 1), -1.5);
}

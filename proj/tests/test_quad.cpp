#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "hankel/quad.hpp"

using namespace hankel;

TEST(GaussLegendre, Midpoint) {
    const auto r = gauss_legendre(1, -1.0, 1.0);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r.nodes[0], 0.0);
    EXPECT_NEAR(r.weights[0], 2.0, 1e-15);
}

TEST(GaussLegendre, TwoPointExactForCubics) {
    const auto r = gauss_legendre(2, -1.0, 1.0);
    EXPECT_NEAR(integrate(r, [](double x) { return x * x; }), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(integrate(r, [](double x) { return x * x * x; }), 0.0, 1e-15);
}

TEST(GaussLegendre, SqrtEndpointConvergence) {
    const auto r = gauss_legendre(64, 0.0, 1.0);
    EXPECT_NEAR(integrate(r, [](double x) { return std::sqrt(x); }), 2.0 / 3.0, 1e-6);
}

TEST(GaussLegendre, RuleInvariants) {
    for (int n : {1, 2, 7, 64, 400}) {
        const auto r = gauss_legendre(n, -0.5, 2.0);
        double sum = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            EXPECT_GT(r.weights[i], 0.0);
            if (i > 0) { EXPECT_LT(r.nodes[i - 1], r.nodes[i]); }
            EXPECT_GT(r.nodes[i], -0.5);
            EXPECT_LT(r.nodes[i], 2.0);
            sum += r.weights[i];
        }
        EXPECT_NEAR(sum, 2.5, 1e-12) << n;
    }
}

TEST(GaussLegendre, SymmetricNodes) {
    for (int n : {2, 9, 30, 401}) {
        const auto r = gauss_legendre(n, -1.0, 1.0);
        for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(r.nodes[i], -r.nodes[r.size() - 1 - i], 1e-14);
    }
}

TEST(GaussLegendre, MonomialExactness) {
    for (int n = 1; n <= 30; ++n) {
        const auto r = gauss_legendre(n, 0.0, 1.0);
        for (int d = 0; d <= 2 * n - 1; ++d) {
            const double q = integrate(r, [d](double x) { return std::pow(x, d); });
            EXPECT_NEAR(q * (d + 1.0), 1.0, 1e-12) << "n=" << n << " d=" << d;
        }
    }
}

TEST(GaussLegendre, EndpointWeightsAccurate) {
    // weights at n = 400 against the classical asymptotic-free identity sum w x^2 = 2/3
    const auto r = gauss_legendre(400, -1.0, 1.0);
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * r.nodes[i] * r.nodes[i];
    EXPECT_NEAR(s, 2.0 / 3.0, 1e-14);
}

TEST(GaussLegendre, RejectsBadArguments) {
    EXPECT_THROW(gauss_legendre(0, 0.0, 1.0), DomainError);
    EXPECT_THROW(gauss_legendre(3, 1.0, 1.0), DomainError);
    EXPECT_THROW(gauss_legendre(3, 2.0, 1.0), DomainError);
}

TEST(Integrate, Basics) {
    for (int n : {1, 5, 40}) EXPECT_NEAR(integrate(gauss_legendre(n, 0.0, 1.0), [](double) { return 1.0; }), 1.0, 1e-14);
    EXPECT_NEAR(integrate(gauss_legendre(20, 0.0, std::numbers::pi), [](double x) { return std::sin(x); }), 2.0, 1e-12);
    for (int n : {3, 8, 51}) EXPECT_NEAR(integrate(gauss_legendre(n, -1.0, 1.0), [](double x) { return x * x * x; }), 0.0, 1e-14);
}

TEST(Integrate, NaNIsReported) {
    EXPECT_THROW(integrate(gauss_legendre(4, 0.0, 1.0), [](double) { return std::nan(""); }), EvaluationError);
}

TEST(SquaredRule, AbsorbsHalfIntegerPower) {
    const auto r = gauss_legendre_squared(30);
    EXPECT_NEAR(integrate(r, [](double x) { return std::sqrt(x); }), 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(integrate(r, [](double x) { return std::pow(x, 2.5); }), 1.0 / 3.5, 1e-14);
}

TEST(CompositeRule, Panels) {
    const auto r = composite_gauss_legendre(10, 0.0, 10.0, 0.5);
    EXPECT_EQ(r.size(), 200u);
    EXPECT_NEAR(integrate(r, [](double x) { return std::cos(3 * x); }), std::sin(30.0) / 3.0, 1e-13);
    const std::vector<double> bad{0.0, 1.0, 1.0};
    EXPECT_THROW(composite_gauss_legendre(4, bad), DomainError);
}

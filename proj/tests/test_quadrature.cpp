#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "edgeworth/fft.hpp"
#include "edgeworth/quadrature.hpp"
#include "edgeworth/series.hpp"

using namespace edgeworth;

namespace {
double double_factorial(int n) {
    double r = 1.0;
    for (int i = n; i > 1; i -= 2) r *= i;
    return r;
}
}  // namespace

TEST(Quadrature, LegendreIntegratesPolynomialsExactly) {
    const auto& r = quad::gauss_legendre(10);
    for (int k = 0; k < 20; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], k);
        EXPECT_NEAR(s, k % 2 ? 0.0 : 2.0 / (k + 1), 1e-14);
    }
}

TEST(Quadrature, HermiteReproducesNormalMoments) {
    const auto& r = quad::gauss_hermite(40);
    const double root = std::sqrt(2.0 * std::numbers::pi);
    for (int k = 0; k <= 30; k += 2) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], k);
        EXPECT_NEAR(s / (root * double_factorial(k - 1)), 1.0, 1e-12) << "k = " << k;
    }
}

TEST(Quadrature, JacobiMatchesBetaIntegrals) {
    // int_{-1}^1 (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1).
    for (auto [a, b] : {std::pair{-0.5, 0.0}, std::pair{0.3, -0.7}, std::pair{-0.25, 1.5}}) {
        const auto& r = quad::gauss_jacobi(20, a, b);
        double s = 0.0;
        for (double w : r.w) s += w;
        const double ref = std::pow(2.0, a + b + 1) * std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 2);
        EXPECT_NEAR(s / ref, 1.0, 1e-11);
    }
}

TEST(Quadrature, LaguerreMatchesGamma) {
    const auto& r = quad::gauss_laguerre(30, 0.0);
    for (int k = 0; k <= 20; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], k);
        EXPECT_NEAR(s / std::tgamma(k + 1.0), 1.0, 1e-11);
    }
}

TEST(Quadrature, AdaptiveAndComposite) {
    auto f = [](double x) { return std::exp(-x) * std::sin(3.0 * x); };
    const double ref = (3.0 - std::exp(-5.0) * (std::sin(15.0) + 3.0 * std::cos(15.0))) / 10.0;
    EXPECT_NEAR(quad::adaptive(f, 0.0, 5.0, 1e-13), ref, 1e-12);
    EXPECT_NEAR(quad::composite(f, 0.0, 5.0, 8, 16), ref, 1e-13);
    EXPECT_THROW(quad::gauss_legendre(0), BoundsError);
}

TEST(Fft, LinearConvolutionMatchesDirectSum) {
    std::vector<double> a{1, 2, 3, 4, 5}, b{0.5, -1, 2};
    const auto c = fft::linear_convolve(a, b);
    ASSERT_EQ(c.size(), a.size() + b.size() - 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (k >= i && k - i < b.size()) s += a[i] * b[k - i];
        EXPECT_NEAR(c[k], s, 1e-12);
    }
}

TEST(Fft, GoodSizeHasSmallFactors) {
    for (std::size_t n : {1u, 97u, 1000u, 4099u}) {
        std::size_t g = fft::good_size(n), r = g;
        EXPECT_GE(g, n);
        for (std::size_t p : {2u, 3u, 5u, 7u})
            while (r % p == 0) r /= p;
        EXPECT_EQ(r, 1u);
    }
}

TEST(Series, LogOfExpIsIdentity) {
    series::Coeffs g{0.0, 0.3, -0.2, 0.05, 0.7, -0.1};
    const auto back = series::log(series::exp(g, 5), 5);
    for (int k = 0; k <= 5; ++k) EXPECT_NEAR(std::abs(back[k] - g[k]), 0.0, 1e-14);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "edgeworth/cumulants.hpp"

using namespace edgeworth;

namespace {

// kappa_n = alpha_n - sum_{k=1}^{n-1} C(n-1, k-1) kappa_k alpha_{n-k}.
std::vector<double> cumulants_by_recursion(const std::vector<double>& alpha) {
    const int m = static_cast<int>(alpha.size());
    std::vector<double> kappa(m);
    for (int n = 1; n <= m; ++n) {
        double s = alpha[n - 1];
        double binom = 1.0;  // C(n-1, k-1)
        for (int k = 1; k < n; ++k) {
            s -= binom * kappa[k - 1] * alpha[n - k - 1];
            binom = binom * (n - k) / k;
        }
        kappa[n - 1] = s;
    }
    return kappa;
}

// Coefficients of He_k from He_{k+1} = x He_k - k He_{k-1}, written out
// separately from the library.
std::vector<double> hermite_coeffs(int k) {
    std::vector<double> prev{1.0}, cur{0.0, 1.0};
    if (k == 0) return prev;
    for (int j = 1; j < k; ++j) {
        std::vector<double> next(j + 2, 0.0);
        for (int i = 0; i <= j; ++i) next[i + 1] += cur[i];
        for (int i = 0; i < j; ++i) next[i] -= j * prev[i];
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

TEST(Cumulants, MatchRecursionOnRandomMoments) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + trial % 10;
        std::vector<double> a(m);
        for (double& v : a) v = u(rng);
        const auto got = cumulants_from_moments(MomentVector(a));
        const auto ref = cumulants_by_recursion(a);
        for (int k = 1; k <= m; ++k)
            EXPECT_NEAR(got.gamma(k), ref[k - 1], 1e-10 * std::max(1.0, std::abs(ref[k - 1])));
    }
}

TEST(Cumulants, RoundTripToTwelveDigits) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + trial % 8;
        std::vector<double> a(m);
        for (double& v : a) v = u(rng);
        const auto back = moments_from_cumulants(cumulants_from_moments(MomentVector(a)));
        for (int k = 1; k <= m; ++k) EXPECT_NEAR(back.alpha(k), a[k - 1], 1e-12 * std::max(1.0, std::abs(a[k - 1])));
    }
}

TEST(Cumulants, StandardExponential) {
    // alpha_k = k!, kappa_k = (k-1)!.
    std::vector<double> a;
    for (int k = 1; k <= 10; ++k) a.push_back(std::tgamma(k + 1.0));
    const auto c = cumulants_from_moments(MomentVector(a));
    for (int k = 1; k <= 10; ++k) EXPECT_NEAR(c.gamma(k) / std::tgamma(k), 1.0, 1e-12);
}

TEST(Cumulants, PoissonHasEqualCumulants) {
    // Moments of Poisson(lambda) are Touchard polynomials; build them from the
    // cumulants lambda, lambda, ... with the recursion and invert.
    const double lam = 0.7;
    const int m = 8;
    std::vector<double> alpha(m);
    std::vector<double> kappa(m, lam);
    for (int n = 1; n <= m; ++n) {
        double s = kappa[n - 1];
        double binom = 1.0;
        for (int k = 1; k < n; ++k) {
            s += binom * kappa[k - 1] * alpha[n - k - 1];
            binom = binom * (n - k) / k;
        }
        alpha[n - 1] = s;
    }
    EXPECT_NEAR(alpha[1], lam + lam * lam, 1e-14);
    const auto c = cumulants_from_moments(MomentVector(alpha));
    for (int k = 1; k <= m; ++k) EXPECT_NEAR(c.gamma(k), lam, 1e-11);
}

TEST(Cumulants, StandardizationChecks) {
    EXPECT_TRUE(CumulantVector::standardized_from_higher({0.3}).is_standardized());
    const CumulantVector bad({0.1, 1.0, 0.0});
    EXPECT_FALSE(bad.is_standardized());
    EXPECT_THROW(bad.require_standardized("test"), PreconditionError);
    EXPECT_THROW(bad.gamma(4), BoundsError);
    EXPECT_THROW(bad.gamma(0), BoundsError);
}

TEST(Hermite, CoefficientsMatchIndependentRecurrence) {
    for (int k = 0; k <= 20; ++k) {
        const Poly p = hermite(k);
        const auto ref = hermite_coeffs(k);
        ASSERT_EQ(p.degree(), k);
        for (int i = 0; i <= k; ++i) EXPECT_NEAR(p[i].real(), ref[i], 1e-9 * std::max(1.0, std::abs(ref[i])));
    }
}

// H_k e^{-x^2/2} = (-1)^k d^k/dx^k e^{-x^2/2}, differentiating the polynomial
// factor symbolically: if d^k e^{-x^2/2} = q_k e^{-x^2/2} then q_{k+1} = q_k' - x q_k.
TEST(Hermite, RodriguesFormula) {
    std::vector<double> q{1.0};
    for (int k = 0; k <= 15; ++k) {
        const Poly h = hermite(k);
        for (std::size_t i = 0; i < q.size(); ++i) {
            const double sign = (k % 2) ? -1.0 : 1.0;
            EXPECT_NEAR(h[static_cast<int>(i)].real(), sign * q[i], 1e-9 * std::max(1.0, std::abs(q[i])));
        }
        std::vector<double> next(q.size() + 1, 0.0);
        for (std::size_t i = 1; i < q.size(); ++i) next[i - 1] += i * q[i];
        for (std::size_t i = 0; i < q.size(); ++i) next[i + 1] -= q[i];
        q = next;
    }
}

TEST(Hermite, ValuesAgreeWithPolynomials) {
    for (double x : {-3.1, -0.4, 0.0, 1.7, 4.2}) {
        const auto v = hermite_values(12, x);
        for (int k = 0; k <= 12; ++k)
            EXPECT_NEAR(v[k], hermite(k)(x).real(), 1e-9 * std::max(1.0, std::abs(v[k])));
    }
    EXPECT_THROW(hermite(-1), BoundsError);
    EXPECT_THROW(hermite(kMaxHermiteOrder + 1), BoundsError);
}

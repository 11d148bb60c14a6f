#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "edgeworth/fit.hpp"
#include "edgeworth/gridoracle.hpp"

using namespace edgeworth;

namespace {
const double kRoot3 = std::sqrt(3.0), kRoot2 = std::sqrt(2.0);

// Density of (U_1 + U_2)/sqrt(2) for U uniform on [-sqrt 3, sqrt 3].
double triangle(double x) {
    const double y = kRoot2 * std::abs(x);
    return y >= 2 * kRoot3 ? 0.0 : kRoot2 * (2 * kRoot3 - y) / 12.0;
}

// Density of (E_1 + E_2 - 2)/sqrt(2) for standard exponentials: Gamma(2).
double gamma2(double x) {
    const double y = kRoot2 * x + 2.0;
    return y <= 0.0 ? 0.0 : kRoot2 * y * std::exp(-y);
}
}  // namespace

TEST(GridOracle, ConvolutionOfUniformsIsATriangle) {
    const auto g = normalized_sum_native(models::uniform(), 2);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(g.values[i] - triangle(g.x(i))));
    EXPECT_LT(err, 1e-3);  // cell averages smear the kinks
    double mid = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::abs(g.x(i)) < 2.0) mid = std::max(mid, std::abs(g.values[i] - triangle(g.x(i))));
    EXPECT_LT(mid, 1e-10);  // piecewise linear away from the kinks
}

TEST(GridOracle, ConvolutionOfNormalsIsNormal) {
    const double h = 1.0 / 256;
    const auto f = discretize(models::gaussian(), 16.0, h);
    const auto c = convolve(f, f, 64.0);
    for (std::size_t i = 0; i < c.size(); i += 37) {
        const double x = c.x(i);
        const double ref = std::exp(-0.25 * x * x) / std::sqrt(4.0 * std::numbers::pi);
        EXPECT_NEAR(c.values[i], ref, 2e-6) << "x = " << x;
    }
    EXPECT_NEAR(c.mass(), 1.0, 1e-12);
}

TEST(GridOracle, InversionRecoversGaussian) {
    InversionOptions opt;
    opt.tail_budget = 1e-12;
    const auto g = invert_charfn(models::gaussian(), 5, 8.0, 1.0 / 32, opt);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g.values[i], std_normal_pdf(g.x(i)), 1e-10);
}

TEST(GridOracle, InversionRecoversGammaTwo) {
    InversionOptions opt;
    opt.tail_budget = 1e-7;
    const auto g = invert_charfn(models::exp1(), 2, 8.0, 1.0 / 32, opt);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g.values[i], gamma2(g.x(i)), 1e-6) << "x = " << g.x(i);
}

TEST(GridOracle, ConvolutionAndInversionAgree) {
    for (const auto& model : {models::uniform(), models::exp1()})
        for (int n : {2, 4, 8, 16}) {
            const auto conv = normalized_sum_native(model, n);
            const auto inv = invert_charfn(model, n, 8.0, conv.h);
            double gap = 0.0;
            for (std::size_t i = 0; i < inv.size(); ++i) gap = std::max(gap, std::abs(conv.at(inv.x(i)) - inv.values[i]));
            EXPECT_LT(gap, 1e-4) << model.name << " n = " << n;
        }
}

TEST(GridOracle, DivergentInversionIsAConfigurationError) {
    EXPECT_THROW(invert_charfn(models::exp1(), 1, 8.0, 1.0 / 32), ConfigurationError);
}

TEST(GridOracle, CutoffRules) {
    EXPECT_EQ(CutoffRule::parse("auto").kind, CutoffRule::Kind::automatic);
    const auto f = CutoffRule::parse("fixed:12.5");
    EXPECT_EQ(f.kind, CutoffRule::Kind::fixed);
    EXPECT_DOUBLE_EQ(f.value, 12.5);
    EXPECT_EQ(CutoffRule::parse("scaled:2").kind, CutoffRule::Kind::scaled);
    EXPECT_THROW(CutoffRule::parse("fixed:-1"), ConfigurationError);
    EXPECT_THROW(CutoffRule::parse("fixed:abc"), ConfigurationError);
    EXPECT_THROW(CutoffRule::parse("sixth"), ConfigurationError);
    // n^{1/6} is far too small a cutoff for the uniform law.
    InversionOptions opt;
    opt.cutoff = CutoffRule::parse("scaled:1");
    EXPECT_THROW(invert_charfn(models::uniform(), 8, 8.0, 1.0 / 32, opt), ConfigurationError);
}

TEST(GridOracle, AutomaticCutoffMeetsBudget) {
    for (double budget : {1e-4, 1e-8}) {
        const double T = choose_cutoff(models::uniform(), 8, CutoffRule{}, budget);
        EXPECT_LE(inversion_tail_bound(models::uniform(), 8, T), budget);
        EXPECT_GT(inversion_tail_bound(models::uniform(), 8, 0.9 * T), budget);
    }
}

TEST(GridOracle, TruncationIsReported) {
    const auto f = discretize(models::exp1(), 30.0, 1.0 / 64);
    EXPECT_THROW(self_convolve(f, 16, 8.0), TruncationError);
    try {
        self_convolve(f, 16, 8.0);
    } catch (const TruncationError& e) {
        EXPECT_GT(e.lost_mass(), 1e-6);
    }
}

TEST(GridOracle, SymmetryAndMoments) {
    const auto g = normalized_sum_native(models::uniform(), 6);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g.values[i], g.values[g.size() - 1 - i], 1e-13);
    EXPECT_NEAR(g.mass(), 1.0, 1e-12);
    EXPECT_NEAR(g.moment(2), 1.0, 1e-4);
}

TEST(GridOracle, CsvRoundTrip) {
    const auto g = normalized_sum_native(models::uniform(), 2);
    std::stringstream ss;
    write_csv(ss, g);
    const auto back = read_csv(ss);
    ASSERT_EQ(back.size(), g.size());
    EXPECT_DOUBLE_EQ(back.h, g.h);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_DOUBLE_EQ(back.values[i], g.values[i]);
}

TEST(GridOracle, ErrorFunctionalsVanishForGaussian) {
    InversionOptions opt;
    opt.tail_budget = 1e-12;
    const auto g = invert_charfn(models::gaussian(), 8, 8.0, 1.0 / 32, opt);
    const EdgeworthApproximant a(ExpansionOrder(4.0), models::gaussian().cumulants(4), 8);
    EXPECT_LT(nonuniform_error(g, a, 4.0).value, 1e-7);
    EXPECT_LT(tv_error(g, a), 1e-9);
}

TEST(Fit, RecoversPowerLaw) {
    std::vector<int> n{4, 8, 16, 32, 64, 128};
    std::vector<double> e;
    for (int v : n) e.push_back(3.0 * std::pow(v, -1.5));
    const auto f = fit_loglog(n, e);
    ASSERT_TRUE(f.defined);
    EXPECT_NEAR(f.slope, -1.5, 1e-12);
    EXPECT_NEAR(f.std_error, 0.0, 1e-10);
    EXPECT_EQ(f.points, 3);
    e.back() = 1e-14;
    EXPECT_FALSE(fit_loglog(n, e).defined);
    EXPECT_THROW(fit_loglog(n, {1.0}), ArityError);
}

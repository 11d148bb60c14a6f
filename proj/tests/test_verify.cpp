#include <gtest/gtest.h>

#include "edgeworth/verify.hpp"

using namespace edgeworth;

class Suite : public ::testing::TestWithParam<std::string> {};

TEST_P(Suite, AllChecksPass) {
    for (const auto& c : verify::run_suite(GetParam())) EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
}

INSTANTIATE_TEST_SUITE_P(Verify, Suite,
                         ::testing::Values("cumulants", "edgeworth", "fractional", "smoothing", "oracle"));

TEST(Verify, PerturbedGammaFourFailsProjection) {
    verify::Options opt;
    opt.perturb_gamma4 = 1e-3;
    bool failed = false;
    for (const auto& c : verify::run_suite("edgeworth", opt))
        if (c.name.find("projection") != std::string::npos) failed = !c.passed;
    EXPECT_TRUE(failed);
}

TEST(Verify, UnknownSuite) { EXPECT_THROW(verify::run_suite("nope"), ConfigurationError); }

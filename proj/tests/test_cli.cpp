#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    static int counter = 0;
    const std::string path = ::testing::TempDir() + "edgeworth_cli_" + std::to_string(counter++) + ".txt";
    const std::string cmd = std::string(EDGEWORTH_CLI) + " " + args + " > " + path + " 2>&1";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << text;
    return path;
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, ExpandUniform) {
    const auto r = run("expand --model uniform --m 4");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "gamma_4 = -1.2")) << r.out;
    EXPECT_TRUE(contains(r.out, "P_1(t) = 0\n")) << r.out;
    EXPECT_TRUE(contains(r.out, "P_2(t) = -0.05 t^4\n")) << r.out;
}

TEST(Cli, ExpandExponentialAndGaussian) {
    EXPECT_TRUE(contains(run("expand --model exp1 --m 3").out, "P_1(t) = 0.333333333333 t^3"));
    const auto g = run("expand --model gaussian --m 6");
    for (int k = 1; k <= 4; ++k) EXPECT_TRUE(contains(g.out, "P_" + std::to_string(k) + "(t) = 0\n")) << g.out;
}

TEST(Cli, ConfigurationErrorsExitWithTwo) {
    EXPECT_EQ(run("expand --model cauchy --m 3").code, 2);
    EXPECT_EQ(run("expand --model student_t --m 5").code, 2);
    EXPECT_EQ(run("rates --model uniform --s 4 --cutoff scaled:1").code, 2);
    EXPECT_EQ(run("rates --model uniform --n-list 8,4").code, 2);
    EXPECT_EQ(run("verify bogus").code, 2);
    EXPECT_EQ(run("smooth-demo --c 2").code, 2);
    const auto bad = write_temp("bad_config.json", R"({"model": "uniform", "s": 4, "colour": "red"})");
    const auto r = run("rates --config " + bad);
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.out, "unknown key 'colour'")) << r.out;
}

TEST(Cli, RatesCsvIsDeterministicAndCarriesProvenance) {
    const auto cfg = write_temp("ok_config.json", R"({"model": "uniform", "s": 4, "n_list": [4, 8, 16, 32]})");
    const auto a = run("rates --config " + cfg);
    const auto b = run("rates --config " + cfg);
    ASSERT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("# config_hash=", 0), 0u);
    EXPECT_TRUE(contains(a.out, "n,sup_err_w0,sup_err_wm,sup_err_ws,tv_err,oracle_gap\n"));
    EXPECT_TRUE(contains(a.out, "# slope tv_err = "));
    // Flags override the file, and change the hash.
    const auto c = run("rates --config " + cfg + " --n-list 4,8,16");
    EXPECT_NE(a.out.substr(0, 32), c.out.substr(0, 32));
}

TEST(Cli, GaussianSlopesAreUndefined) {
    const auto r = run("rates --model gaussian --s 4 --n-list 4,8,16,32");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "# slope sup_err_w0 = undefined")) << r.out;
    EXPECT_TRUE(contains(r.out, "# slope tv_err = undefined")) << r.out;
}

TEST(Cli, VerifyExitCodes) {
    EXPECT_EQ(run("verify cumulants").code, 0);
    const auto r = run("verify edgeworth --perturb-gamma4 1e-3");
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.out, "first failure: projection")) << r.out;
}

TEST(Cli, SmoothDemo) {
    const auto r = run("smooth-demo --n-list 3..8");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(contains(r.out, "n,beta_n,tv_gap,c^n\n"));
    EXPECT_TRUE(contains(r.out, "# skipped n=3"));
    EXPECT_TRUE(contains(r.out, "\n8,"));
    const auto u = run("smooth-demo --model uniform --n-list 4,5");
    EXPECT_TRUE(contains(u.out, "\n4,0,0,0.0625\n")) << u.out;
}

TEST(Cli, NumericFailureExitsWithThree) {
    // A grid this coarse puts more than c/2 of the chi-square mass in one cell.
    EXPECT_EQ(run("smooth-demo --spacing 0.5").code, 3);
}
